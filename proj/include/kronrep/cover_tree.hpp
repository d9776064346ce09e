#pragma once

// Combinatorics of the universal cover of the n-Kronecker quiver, the
// n-regular tree with bipartite orientation.
//
// Vertices of the cover are addressed by reduced words over the labels
// 1..n, read as walks from a fixed base sink: the neighbour of a word w along
// label l is w with l removed if w ends in l, and w.l otherwise.  Every vertex
// therefore carries exactly one edge of each label.  Words of even length are
// sinks, words of odd length are sources, and every edge points from its
// source end to its sink end.
//
// Deck transformations (label- and orientation-preserving automorphisms of
// the cover) are left multiplications w -> reduce(u.w) by even-length words
// u.  They act simply transitively on sinks and on sources.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kronrep/root_system.hpp"

namespace kronrep {

// Arrow labels are stored in one byte.
inline constexpr int kMaxArrows = 255;

inline constexpr int kDefaultEnumerationBudget = 12;

using Word = std::vector<std::uint8_t>;

enum class Color : std::uint8_t { Sink, Source };

class CoverVertex {
public:
    CoverVertex() = default;
    // Throws DomainError unless the word is reduced.
    explicit CoverVertex(Word word);

    const Word& word() const noexcept { return word_; }
    Color color() const noexcept { return word_.size() % 2 == 0 ? Color::Sink : Color::Source; }

    // Neighbour along `label`.
    CoverVertex neighbor(int label) const;

    auto operator<=>(const CoverVertex&) const = default;

private:
    Word word_;
};

// Dotted label sequence, "" for the base sink, e.g. "1.3.1".
std::string toString(const CoverVertex& v);

struct TreeEdge {
    CoverVertex source;
    CoverVertex sink;
    int label = 0;

    auto operator<=>(const TreeEdge&) const = default;
};

// Finite connected subtree of the cover.  Since the cover is a tree, a
// connected vertex set determines its edges; they are derived and stored.
class LabeledSubtree {
public:
    // Throws DomainError if the vertex set is empty, not connected, or uses
    // labels outside 1..n.
    LabeledSubtree(KroneckerIndex n, std::vector<CoverVertex> vertices);

    KroneckerIndex arrows() const noexcept { return n_; }
    const std::vector<CoverVertex>& vertices() const noexcept { return vertices_; }  // sorted
    const std::vector<TreeEdge>& edges() const noexcept { return edges_; }            // sorted
    std::size_t size() const noexcept { return vertices_.size(); }

    int sourceCount() const;
    int sinkCount() const;
    // (#sources, #sinks), the dimension vector of the push-down.
    DimVector dim() const;

    bool contains(const CoverVertex& v) const;

    bool operator==(const LabeledSubtree&) const = default;

private:
    KroneckerIndex n_;
    std::vector<CoverVertex> vertices_;
    std::vector<TreeEdge> edges_;
};

// Checks every structural invariant of a subtree: reduced words, labels in
// range, distinct vertices, |E| = |V| - 1, edges directed source -> sink and
// consistent with the cover, distinct labels at each vertex, connectivity.
// Returns a description of the first violation.
std::optional<std::string> validationError(const LabeledSubtree& t);

// Sequence (y(1), ..., y(x)) with 1 <= y(i) <= n-1 for i < x, 1 <= y(x) <= n
// and sum y.
struct Composition {
    std::vector<int> parts;

    bool operator==(const Composition&) const = default;
};

// Throws DomainError naming the violated bound.
void validateComposition(KroneckerIndex n, int x, int y, const Composition& c);

// Greedy front-loaded composition; requires 1 <= x <= y <= (n-1) x + 1.
Composition defaultComposition(KroneckerIndex n, int x, int y);

// Zigzag s1 <-1- t1 -n-> s2 <-1- t2 ... s_x <-1- t_x starting at the base
// sink, with extra arrows of labels 2..y(i) leaving each t_i.  Requires
// 2 <= x <= y <= (n-1) x + 1.
LabeledSubtree canonicalConstruction(KroneckerIndex n, int x, int y, const Composition& c);

// (0, 1): a single sink.  (1, y), 1 <= y <= n: one source with arrows 1..y.
LabeledSubtree smallCaseConstruction(KroneckerIndex n, int x, int y);

// Cover-thin subtree of dimension vector v: small case or canonical
// construction when x <= y, the dual of the (y, x) construction otherwise.
// The composition, when given, applies to the x <= y side.  Throws
// DomainError if no cover-thin module of that dimension vector exists.
LabeledSubtree constructCoverThin(KroneckerIndex n, DimVector v,
                                  const std::optional<Composition>& c = std::nullopt);

// sigma[i - 1] is the image of label i.  Throws DomainError unless sigma is
// a permutation of 1..n.
LabeledSubtree permuteLabels(const LabeledSubtree& t, const std::vector<int>& sigma);

// Swaps sources and sinks and reverses every arrow.
LabeledSubtree dualize(const LabeledSubtree& t);

// Canonical form under deck transformations.  Rooted codes read
//   <color>(<label><child code>)...
// with color 'o' for sources and 'i' for sinks and children in increasing
// label order; the tree is rooted at its center, the smaller of the two
// rooted codes is taken for bicentral trees.
struct CanonicalCode {
    std::string code;

    auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonicalCode(const LabeledSubtree& t);

// Vertices in the preorder that produced the canonical code.
std::vector<CoverVertex> canonicalOrder(const LabeledSubtree& t);

class DeckTransformation {
public:
    DeckTransformation() = default;
    // Throws DomainError unless the shift word is reduced of even length.
    explicit DeckTransformation(Word shift);

    // The unique deck transformation sending `from` to `to` (same color).
    static DeckTransformation mapping(const CoverVertex& from, const CoverVertex& to);

    const Word& shift() const noexcept { return shift_; }
    CoverVertex apply(const CoverVertex& v) const;

    auto operator<=>(const DeckTransformation&) const = default;

private:
    Word shift_;
};

using DeckAlignment = DeckTransformation;

LabeledSubtree translate(const LabeledSubtree& t, const DeckTransformation& g);

// Translates t so that the first sink in canonical order is the base sink
// (or, for a lone source, so that it sits at word "1").
LabeledSubtree normalize(const LabeledSubtree& t);

// One representative per deck-translation class of connected subtrees with x
// sources and y sinks, sorted by canonical code.  Throws ResourceError when
// x + y exceeds the budget.
std::vector<LabeledSubtree> enumerateSubtrees(KroneckerIndex n, int x, int y,
                                              int budget = kDefaultEnumerationBudget);

// All deck transformations g with g(other) meeting base, sorted.
std::vector<DeckAlignment> overlapAlignments(const LabeledSubtree& base, const LabeledSubtree& other);

// DOT digraph: sources as boxes, sinks as circles, nodes v0, v1, ... in
// canonical order, arrows labelled "α<label>".
std::string toDot(const LabeledSubtree& t, const std::string& graphName = "subtree");

}  // namespace kronrep
