#include "kronrep/cover_tree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "kronrep/errors.hpp"

namespace kronrep {

namespace {

bool isReduced(const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) return false;
        if (i > 0 && w[i] == w[i - 1]) return false;
    }
    return true;
}

Word concatReduced(const Word& left, const Word& right) {
    Word out = left;
    for (std::uint8_t letter : right) {
        if (!out.empty() && out.back() == letter)
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

void checkArrowCount(KroneckerIndex n) {
    if (n.value() > kMaxArrows)
        throw DomainError("at most " + std::to_string(kMaxArrows) + " arrows supported by the cover");
}

// Index-based view of a subtree used for canonical forms and traversals.
struct Adjacency {
    std::vector<Color> color;
    // (label, neighbour index), sorted by label.
    std::vector<std::vector<std::pair<int, int>>> nbrs;
};

int indexOf(const std::vector<CoverVertex>& sorted, const CoverVertex& v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) return -1;
    return static_cast<int>(it - sorted.begin());
}

Adjacency buildAdjacency(const LabeledSubtree& t) {
    const auto& verts = t.vertices();
    Adjacency a;
    a.color.reserve(verts.size());
    for (const auto& v : verts) a.color.push_back(v.color());
    a.nbrs.resize(verts.size());
    for (const auto& e : t.edges()) {
        const int s = indexOf(verts, e.source);
        const int k = indexOf(verts, e.sink);
        a.nbrs[s].emplace_back(e.label, k);
        a.nbrs[k].emplace_back(e.label, s);
    }
    for (auto& row : a.nbrs) std::sort(row.begin(), row.end());
    return a;
}

// One or two centers, found by repeatedly stripping leaves.
std::vector<int> centers(const Adjacency& a) {
    const int count = static_cast<int>(a.color.size());
    if (count <= 2) {
        std::vector<int> all(count);
        for (int i = 0; i < count; ++i) all[i] = i;
        return all;
    }
    std::vector<int> degree(count);
    std::vector<int> layer;
    for (int i = 0; i < count; ++i) {
        degree[i] = static_cast<int>(a.nbrs[i].size());
        if (degree[i] == 1) layer.push_back(i);
    }
    int remaining = count;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int leaf : layer) {
            for (auto [label, w] : a.nbrs[leaf]) {
                if (--degree[w] == 1) next.push_back(w);
            }
        }
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

void appendRootedCode(const Adjacency& a, int v, int parent, std::string& out, std::vector<int>* order) {
    out += a.color[v] == Color::Source ? 'o' : 'i';
    if (order) order->push_back(v);
    for (auto [label, w] : a.nbrs[v]) {
        if (w == parent) continue;
        out += '(';
        out += std::to_string(label);
        appendRootedCode(a, w, v, out, order);
        out += ')';
    }
}

struct RootedForm {
    std::string code;
    int root = 0;
};

RootedForm canonicalRooting(const Adjacency& a) {
    RootedForm best;
    bool first = true;
    for (int c : centers(a)) {
        std::string code;
        appendRootedCode(a, c, -1, code, nullptr);
        if (first || code < best.code) best = {std::move(code), c};
        first = false;
    }
    return best;
}

std::vector<CoverVertex> sortedUnique(std::vector<CoverVertex> vs) {
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        throw DomainError("subtree lists a vertex twice");
    return vs;
}

}  // namespace

CoverVertex::CoverVertex(Word word) : word_(std::move(word)) {
    if (!isReduced(word_)) throw DomainError("cover vertex word is not reduced");
}

CoverVertex CoverVertex::neighbor(int label) const {
    if (label < 1 || label > kMaxArrows) throw DomainError("label out of range: " + std::to_string(label));
    const auto l = static_cast<std::uint8_t>(label);
    CoverVertex out = *this;
    if (!out.word_.empty() && out.word_.back() == l)
        out.word_.pop_back();
    else
        out.word_.push_back(l);
    return out;
}

std::string toString(const CoverVertex& v) {
    std::string out;
    for (std::size_t i = 0; i < v.word().size(); ++i) {
        if (i) out += '.';
        out += std::to_string(v.word()[i]);
    }
    return out;
}

LabeledSubtree::LabeledSubtree(KroneckerIndex n, std::vector<CoverVertex> vertices)
    : n_(n), vertices_(sortedUnique(std::move(vertices))) {
    checkArrowCount(n);
    if (vertices_.empty()) throw DomainError("subtree must have at least one vertex");
    for (const auto& v : vertices_) {
        for (auto letter : v.word())
            if (letter > n.value()) throw DomainError("vertex word uses a label above n: " + toString(v));
    }
    // Edges: each vertex of the set meets its neighbours along every label.
    for (const auto& v : vertices_) {
        if (v.color() != Color::Source) continue;
        for (int label = 1; label <= n.value(); ++label) {
            CoverVertex w = v.neighbor(label);
            if (std::binary_search(vertices_.begin(), vertices_.end(), w))
                edges_.push_back({v, std::move(w), label});
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (edges_.size() + 1 != vertices_.size()) throw DomainError("vertex set is not connected in the cover");
}

int LabeledSubtree::sourceCount() const {
    return static_cast<int>(std::count_if(vertices_.begin(), vertices_.end(),
                                          [](const CoverVertex& v) { return v.color() == Color::Source; }));
}

int LabeledSubtree::sinkCount() const { return static_cast<int>(vertices_.size()) - sourceCount(); }

DimVector LabeledSubtree::dim() const { return {sourceCount(), sinkCount()}; }

bool LabeledSubtree::contains(const CoverVertex& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::optional<std::string> validationError(const LabeledSubtree& t) {
    const int n = t.arrows().value();
    const auto& verts = t.vertices();
    if (verts.empty()) return "empty vertex set";
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (!isReduced(verts[i].word())) return "unreduced word " + toString(verts[i]);
        for (auto letter : verts[i].word())
            if (letter < 1 || letter > n) return "label out of range in " + toString(verts[i]);
        if (i > 0 && !(verts[i - 1] < verts[i])) return "vertices not sorted and distinct";
    }
    if (t.edges().size() + 1 != verts.size()) return "edge count is not |V| - 1";
    std::map<CoverVertex, std::set<int>> seenLabels;
    for (const auto& e : t.edges()) {
        if (e.source.color() != Color::Source) return "edge tail is not a source";
        if (e.sink.color() != Color::Sink) return "edge head is not a sink";
        if (e.label < 1 || e.label > n) return "edge label out of range";
        if (e.source.neighbor(e.label) != e.sink) return "edge inconsistent with the cover";
        if (!t.contains(e.source) || !t.contains(e.sink)) return "edge endpoint outside the vertex set";
        if (!seenLabels[e.source].insert(e.label).second) return "repeated label at " + toString(e.source);
        if (!seenLabels[e.sink].insert(e.label).second) return "repeated label at " + toString(e.sink);
    }
    // Connectivity by BFS over the stored edges.
    const Adjacency a = buildAdjacency(t);
    std::vector<bool> seen(verts.size(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (auto [label, w] : a.nbrs[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            ++reached;
            queue.push_back(w);
        }
    }
    if (reached != verts.size()) return "subtree is not connected";
    return std::nullopt;
}

void validateComposition(KroneckerIndex n, int x, int y, const Composition& c) {
    if (static_cast<int>(c.parts.size()) != x)
        throw DomainError("composition must have x = " + std::to_string(x) + " parts, got " +
                          std::to_string(c.parts.size()));
    long sum = 0;
    for (int i = 0; i < x; ++i) {
        const int part = c.parts[i];
        const bool last = i + 1 == x;
        const int upper = last ? n.value() : n.value() - 1;
        if (part < 1)
            throw DomainError("composition violates 1 <= y(" + std::to_string(i + 1) + ")");
        if (part > upper)
            throw DomainError("composition violates y(" + std::to_string(i + 1) + ") <= " +
                              (last ? std::string("n") : std::string("n-1")) + " = " + std::to_string(upper));
        sum += part;
    }
    if (sum != y)
        throw DomainError("composition violates sum y(i) = y: sum is " + std::to_string(sum) + ", y is " +
                          std::to_string(y));
}

namespace {

void checkConstructionBounds(KroneckerIndex n, int x, int y, int minX) {
    if (x < minX) throw DomainError("construction requires x >= " + std::to_string(minX));
    if (x > y) throw DomainError("construction requires x <= y");
    const long upper = static_cast<long>(n.value() - 1) * x + 1;
    if (y > upper) throw DomainError("no cover-thin module: y > (n-1)x+1");
}

}  // namespace

Composition defaultComposition(KroneckerIndex n, int x, int y) {
    checkConstructionBounds(n, x, y, 1);
    Composition c;
    int remaining = y;
    for (int i = 1; i < x; ++i) {
        const int slotsLeft = x - i;  // slots after this one, each needing >= 1
        const int part = std::min(n.value() - 1, remaining - slotsLeft);
        c.parts.push_back(part);
        remaining -= part;
    }
    c.parts.push_back(remaining);
    validateComposition(n, x, y, c);
    return c;
}

LabeledSubtree canonicalConstruction(KroneckerIndex n, int x, int y, const Composition& c) {
    checkArrowCount(n);
    checkConstructionBounds(n, x, y, 2);
    validateComposition(n, x, y, c);
    std::vector<CoverVertex> verts;
    CoverVertex sink;  // s_1 is the base sink
    for (int i = 0; i < x; ++i) {
        verts.push_back(sink);
        CoverVertex source = sink.neighbor(1);  // t_i
        verts.push_back(source);
        for (int label = 2; label <= c.parts[i]; ++label) verts.push_back(source.neighbor(label));
        if (i + 1 < x) sink = source.neighbor(n.value());  // s_{i+1}
    }
    return LabeledSubtree(n, std::move(verts));
}

LabeledSubtree smallCaseConstruction(KroneckerIndex n, int x, int y) {
    checkArrowCount(n);
    if (x == 0) {
        if (y != 1) throw DomainError("x = 0 requires y = 1");
        return LabeledSubtree(n, {CoverVertex{}});
    }
    if (x != 1) throw DomainError("small case requires x in {0, 1}");
    if (y < 1 || y > n.value()) throw DomainError("small case requires 1 <= y <= n");
    const CoverVertex center = CoverVertex{}.neighbor(1);
    std::vector<CoverVertex> verts{CoverVertex{}, center};
    for (int label = 2; label <= y; ++label) verts.push_back(center.neighbor(label));
    return LabeledSubtree(n, std::move(verts));
}

LabeledSubtree constructCoverThin(KroneckerIndex n, DimVector v, const std::optional<Composition>& c) {
    if (!coverThinExists(n, v)) {
        if (v.isZero()) throw DomainError("no cover-thin module of dimension (0,0)");
        if (v.x <= v.y) throw DomainError("no cover-thin module: y > (n-1)x+1");
        throw DomainError("no cover-thin module: x > (n-1)y+1");
    }
    if (v.x > v.y) return dualize(constructCoverThin(n, {v.y, v.x}, c));
    const int x = static_cast<int>(v.x);
    const int y = static_cast<int>(v.y);
    if (c) validateComposition(n, x, y, *c);
    if (x <= 1) return smallCaseConstruction(n, x, y);
    return canonicalConstruction(n, x, y, c ? *c : defaultComposition(n, x, y));
}

LabeledSubtree permuteLabels(const LabeledSubtree& t, const std::vector<int>& sigma) {
    const int n = t.arrows().value();
    if (static_cast<int>(sigma.size()) != n)
        throw DomainError("permutation must have n = " + std::to_string(n) + " entries");
    std::vector<bool> hit(n + 1, false);
    for (int image : sigma) {
        if (image < 1 || image > n || hit[image]) throw DomainError("not a permutation of 1..n");
        hit[image] = true;
    }
    // Letterwise relabelling is an automorphism of the cover, so words stay
    // reduced and keep their length.
    std::vector<CoverVertex> verts;
    verts.reserve(t.size());
    for (const auto& v : t.vertices()) {
        Word w = v.word();
        for (auto& letter : w) letter = static_cast<std::uint8_t>(sigma[letter - 1]);
        verts.emplace_back(std::move(w));
    }
    return LabeledSubtree(t.arrows(), std::move(verts));
}

LabeledSubtree dualize(const LabeledSubtree& t) {
    const Adjacency a = buildAdjacency(t);
    const auto& old = t.vertices();
    const int root = 0;
    std::vector<std::optional<CoverVertex>> placed(old.size());
    // New color of the root is the opposite of its old color.
    placed[root] = old[root].color() == Color::Source ? CoverVertex{} : CoverVertex{}.neighbor(1);
    std::deque<int> queue{root};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (auto [label, w] : a.nbrs[v]) {
            if (placed[w]) continue;
            placed[w] = placed[v]->neighbor(label);
            queue.push_back(w);
        }
    }
    std::vector<CoverVertex> verts;
    verts.reserve(old.size());
    for (auto& p : placed) verts.push_back(std::move(*p));
    return normalize(LabeledSubtree(t.arrows(), std::move(verts)));
}

CanonicalCode canonicalCode(const LabeledSubtree& t) {
    return {canonicalRooting(buildAdjacency(t)).code};
}

std::vector<CoverVertex> canonicalOrder(const LabeledSubtree& t) {
    const Adjacency a = buildAdjacency(t);
    const RootedForm form = canonicalRooting(a);
    std::string scratch;
    std::vector<int> order;
    appendRootedCode(a, form.root, -1, scratch, &order);
    std::vector<CoverVertex> out;
    out.reserve(order.size());
    for (int i : order) out.push_back(t.vertices()[i]);
    return out;
}

DeckTransformation::DeckTransformation(Word shift) : shift_(std::move(shift)) {
    if (!isReduced(shift_)) throw DomainError("deck shift word is not reduced");
    if (shift_.size() % 2 != 0) throw DomainError("deck shift must have even length to preserve orientation");
}

DeckTransformation DeckTransformation::mapping(const CoverVertex& from, const CoverVertex& to) {
    if (from.color() != to.color()) throw DomainError("deck transformations preserve vertex color");
    Word inverse(from.word().rbegin(), from.word().rend());
    return DeckTransformation(concatReduced(to.word(), inverse));
}

CoverVertex DeckTransformation::apply(const CoverVertex& v) const {
    return CoverVertex(concatReduced(shift_, v.word()));
}

LabeledSubtree translate(const LabeledSubtree& t, const DeckTransformation& g) {
    std::vector<CoverVertex> verts;
    verts.reserve(t.size());
    for (const auto& v : t.vertices()) verts.push_back(g.apply(v));
    return LabeledSubtree(t.arrows(), std::move(verts));
}

LabeledSubtree normalize(const LabeledSubtree& t) {
    const auto order = canonicalOrder(t);
    for (const auto& v : order) {
        if (v.color() == Color::Sink) return translate(t, DeckTransformation::mapping(v, CoverVertex{}));
    }
    return translate(t, DeckTransformation::mapping(order.front(), CoverVertex{}.neighbor(1)));
}

std::vector<LabeledSubtree> enumerateSubtrees(KroneckerIndex n, int x, int y, int budget) {
    checkArrowCount(n);
    if (x < 0 || y < 0) throw DomainError("dimension vector must be nonnegative");
    if (x + y > budget)
        throw ResourceError("enumeration of " + std::to_string(x + y) + " vertices exceeds budget " +
                            std::to_string(budget));
    if (x + y == 0) return {};

    // Every class has a member through the base sink (or, without sinks,
    // through the source "1").  Grow one vertex at a time and keep one
    // representative per canonical code; leaf removal shows every tree is
    // reached.
    const CoverVertex start = y > 0 ? CoverVertex{} : CoverVertex{}.neighbor(1);
    std::map<CanonicalCode, LabeledSubtree> layer;
    {
        LabeledSubtree seed(n, {start});
        layer.emplace(canonicalCode(seed), std::move(seed));
    }
    for (int size = 1; size < x + y; ++size) {
        std::map<CanonicalCode, LabeledSubtree> next;
        for (const auto& [code, tree] : layer) {
            const int sources = tree.sourceCount();
            const int sinks = tree.sinkCount();
            for (const auto& v : tree.vertices()) {
                for (int label = 1; label <= n.value(); ++label) {
                    CoverVertex w = v.neighbor(label);
                    if (w.color() == Color::Source ? sources >= x : sinks >= y) continue;
                    if (tree.contains(w)) continue;
                    std::vector<CoverVertex> verts = tree.vertices();
                    verts.push_back(std::move(w));
                    LabeledSubtree grown(n, std::move(verts));
                    CanonicalCode grownCode = canonicalCode(grown);
                    if (next.find(grownCode) == next.end()) next.emplace(std::move(grownCode), std::move(grown));
                }
            }
        }
        layer = std::move(next);
    }
    std::vector<LabeledSubtree> out;
    out.reserve(layer.size());
    for (auto& [code, tree] : layer) {
        if (tree.sourceCount() == x && tree.sinkCount() == y) out.push_back(normalize(tree));
    }
    return out;
}

std::vector<DeckAlignment> overlapAlignments(const LabeledSubtree& base, const LabeledSubtree& other) {
    std::set<DeckAlignment> found;
    for (const auto& from : other.vertices()) {
        for (const auto& to : base.vertices()) {
            if (from.color() == to.color()) found.insert(DeckTransformation::mapping(from, to));
        }
    }
    return {found.begin(), found.end()};
}

std::string toDot(const LabeledSubtree& t, const std::string& graphName) {
    const auto order = canonicalOrder(t);
    std::map<CoverVertex, std::size_t> name;
    for (std::size_t i = 0; i < order.size(); ++i) name[order[i]] = i;
    std::ostringstream os;
    os << "digraph " << graphName << " {\n";
    for (std::size_t i = 0; i < order.size(); ++i) {
        const bool source = order[i].color() == Color::Source;
        os << "  v" << i << " [shape=" << (source ? "box" : "circle") << ", tooltip=\"" << toString(order[i])
           << "\"];\n";
    }
    std::vector<std::tuple<std::size_t, int, std::size_t>> arrows;
    for (const auto& e : t.edges()) arrows.emplace_back(name[e.source], e.label, name[e.sink]);
    std::sort(arrows.begin(), arrows.end());
    for (auto [s, label, k] : arrows) os << "  v" << s << " -> v" << k << " [label=\"α" << label << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace kronrep
