#pragma once

// Matrix-level modules over the n-Kronecker algebra: push-down of thin cover
// representations, coefficient quivers, exact Hom spaces, and decisions on
// indecomposability and isomorphism.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kronrep/cover_tree.hpp"
#include "kronrep/linalg.hpp"
#include "kronrep/root_system.hpp"

namespace kronrep {

class FieldSpec {
public:
    enum class Kind { PrimeField, Rationals };

    // Throws DomainError unless p is a prime with p <= 2^16.
    static FieldSpec prime(std::uint32_t p);
    static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
    // "F2", "F3", "F5", ... or "Q".  Throws DomainError on anything else.
    static FieldSpec parse(const std::string& name);

    Kind kind() const noexcept { return kind_; }
    bool isPrime() const noexcept { return kind_ == Kind::PrimeField; }
    std::uint32_t characteristic() const noexcept { return p_; }
    std::string name() const;

    bool operator==(const FieldSpec&) const = default;

private:
    FieldSpec(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}
    Kind kind_;
    std::uint32_t p_;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// Rows are indexed by sinks, columns by sources.
struct BasisTags {
    std::vector<CoverVertex> columns;
    std::vector<CoverVertex> rows;

    bool operator==(const BasisTags&) const = default;
};

// n matrices of shape y x x.  Entries are exact field elements; for prime
// fields they are stored as their representatives in [0, p).
class KroneckerModule {
public:
    // Throws DomainError on wrong matrix count or shape, or entries that are
    // not reduced representatives of the field.
    KroneckerModule(KroneckerIndex n, FieldSpec field, DimVector dim, std::vector<Matrix<Rational>> maps,
                    std::optional<BasisTags> tags = std::nullopt);

    KroneckerIndex arrows() const noexcept { return n_; }
    const FieldSpec& field() const noexcept { return field_; }
    DimVector dim() const noexcept { return dim_; }
    std::size_t totalDimension() const noexcept { return static_cast<std::size_t>(dim_.x + dim_.y); }
    const std::vector<Matrix<Rational>>& maps() const noexcept { return maps_; }
    // Map of arrow alpha_label, 1-based.
    const Matrix<Rational>& map(int label) const { return maps_.at(static_cast<std::size_t>(label - 1)); }
    const std::optional<BasisTags>& basisTags() const noexcept { return tags_; }

    bool operator==(const KroneckerModule&) const = default;

private:
    KroneckerIndex n_;
    FieldSpec field_;
    DimVector dim_;
    std::vector<Matrix<Rational>> maps_;
    std::optional<BasisTags> tags_;
};

// Thin representation with support t pushed down to the Kronecker quiver.
// Basis vectors follow the canonical order of t.
KroneckerModule pushdown(const LabeledSubtree& t, const FieldSpec& field);

// Block-diagonal direct sum; basis tags are dropped.
KroneckerModule directSum(const KroneckerModule& a, const KroneckerModule& b);

// Module with dimension vector v and all maps zero (a sum of simples).
KroneckerModule semisimple(KroneckerIndex n, const FieldSpec& field, DimVector v);

struct CoefficientQuiverReport {
    std::size_t totalNonzeros = 0;
    bool connected = false;
    bool acyclic = false;
    bool isTreePresentation = false;

    bool operator==(const CoefficientQuiverReport&) const = default;
};

CoefficientQuiverReport coefficientQuiverReport(const KroneckerModule& m);

// Pair (A, B) with A: source space map (x' x x) and B: sink space map (y' x y).
struct Morphism {
    Matrix<Rational> source;
    Matrix<Rational> sink;

    bool operator==(const Morphism&) const = default;
};

struct HomSpace {
    std::size_t dimension = 0;
    std::vector<Morphism> basis;
};

// Solves B M_i = N_i A for all arrows.  Throws DomainError if the modules
// differ in field or number of arrows.
HomSpace homDim(const KroneckerModule& m, const KroneckerModule& n);

// True iff B M_i = N_i A for every arrow.
bool isHomomorphism(const KroneckerModule& m, const KroneckerModule& n, const Morphism& f);

enum class Decomposition { Indecomposable, Decomposable, Undecided };

std::string toString(Decomposition d);

// How the verdict was reached.
enum class DecisionRule { BrickShortcut, FittingSplit, NilpotentComplement, IdempotentSearch, None };

struct EndVerdict {
    Decomposition verdict = Decomposition::Undecided;
    DecisionRule rule = DecisionRule::None;
    std::size_t endDimension = 0;
    // Dimension vectors of a splitting M = U (+) V, when Decomposable.
    std::optional<std::pair<DimVector, DimVector>> splitting;
};

struct EndOptions {
    std::uint64_t seed = kDefaultSeed;
    int randomTrials = 16;
    std::size_t maxExhaustiveDimension = 4;
    std::uint64_t maxExhaustiveElements = 1'000'000;
};

// Decision ladder: one-dimensional End; Fitting split of powers of basis and
// random endomorphisms; End = scalars (+) a nilpotent span; exhaustive
// idempotent search for small prime-field End; otherwise Undecided.
EndVerdict endIsLocal(const KroneckerModule& m, const EndOptions& options = {});

enum class IsoVerdict { Isomorphic, NotIsomorphic, Undecided };

std::string toString(IsoVerdict v);

// Searches Hom(m, n) for an invertible element: basis elements, seeded random
// combinations.  When m is known indecomposable the answer is exact: some
// composite of basis maps m -> n -> m must be a unit.  Failing that, small
// prime-field Hom spaces are searched element by element.
IsoVerdict matrixIsomorphic(const KroneckerModule& m, const KroneckerModule& n, const EndOptions& options = {});

// dim Hom(pushdown a, pushdown b) from the combinatorics of the cover: sum
// over deck translates g(b) meeting a of the admissible components of the
// intersection.
std::size_t homDimViaOverlaps(const LabeledSubtree& a, const LabeledSubtree& b);

// Push-downs of a and b are isomorphic iff the subtrees are deck translates.
bool isoCoverThin(const LabeledSubtree& a, const LabeledSubtree& b);

// Label pairs (i, j), i < j, with Im M_i and Im M_j meeting nontrivially.
std::vector<std::pair<int, int>> sharedImagePairs(const KroneckerModule& m);

}  // namespace kronrep
