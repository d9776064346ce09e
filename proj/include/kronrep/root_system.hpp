#pragma once

// Root system of the n-Kronecker quiver: two vertices (source 1, sink 2)
// joined by n parallel arrows.  Dimension vectors are pairs (x, y) with x
// the dimension at the source and y the dimension at the sink.
//
// All arithmetic is exact in 64-bit integers with overflow checks; any
// intermediate result leaving the int64 range raises ArithmeticRangeError.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace kronrep {

// Number of arrows of the Kronecker quiver, n >= 1.
class KroneckerIndex {
public:
    explicit KroneckerIndex(int n);
    int value() const noexcept { return n_; }
    auto operator<=>(const KroneckerIndex&) const = default;

private:
    int n_;
};

// Integer vector over the two quiver vertices.  Negative entries are allowed
// so that reflections can be applied to arbitrary lattice points; operations
// that need a dimension vector in the strict sense check for x, y >= 0.
struct DimVector {
    std::int64_t x = 0;
    std::int64_t y = 0;

    bool isZero() const noexcept { return x == 0 && y == 0; }
    bool isNonnegative() const noexcept { return x >= 0 && y >= 0; }
    std::int64_t total() const;

    auto operator<=>(const DimVector&) const = default;
};

std::ostream& operator<<(std::ostream& os, const DimVector& v);
std::string toString(const DimVector& v);

enum class RootTag { RealRoot, ImaginaryRoot, NotARoot };

struct RootClass {
    RootTag tag = RootTag::NotARoot;
    std::int64_t quadraticValue = 0;

    bool operator==(const RootClass&) const = default;
};

std::string toString(RootTag tag);

enum class CoxeterConvention { Forward, Inverse };

// q(x, y) = x^2 + y^2 - n x y.
std::int64_t titsForm(KroneckerIndex n, DimVector v);

RootClass classify(KroneckerIndex n, DimVector v);

// Positive root with q <= 0, i.e. a dimension vector in the imaginary cone.
bool isPositiveImaginaryRoot(KroneckerIndex n, DimVector v);

// Simple reflections: (x, y) -> (n y - x, y) and (x, y) -> (x, n x - y).
DimVector reflectSource(KroneckerIndex n, DimVector v);
DimVector reflectSink(KroneckerIndex n, DimVector v);

// Forward is reflectSink after reflectSource:
//   (x, y) -> (n y - x, n^2 y - n x - y).
// Inverse is reflectSource after reflectSink.
DimVector coxeter(KroneckerIndex n, DimVector v,
                  CoxeterConvention convention = CoxeterConvention::Forward);

// Forward applied k times for k >= 0, Inverse applied -k times otherwise.
DimVector coxeterPower(KroneckerIndex n, DimVector v, std::int64_t k);

// F = { x/(n-1) < y <= (n-1) x } for n >= 3; for n = 2 the Coxeter-fixed
// diagonal {(m, m) : m >= 1}.  Throws UnsupportedIndexError for n = 1.
bool inFundamentalDomain(KroneckerIndex n, DimVector v);

struct Reduction {
    DimVector representative;
    std::int64_t power = 0;  // representative = coxeterPower(v, power)

    bool operator==(const Reduction&) const = default;
};

// Moves a positive imaginary root into F along its Coxeter orbit.  The
// returned power is the unique (hence minimal) exponent landing in F.
Reduction reduceToFundamentalDomain(KroneckerIndex n, DimVector v);

// Dimension vectors of the preprojective series P0, P1, ... starting at
// (0, 1) and of the preinjective series I0, I1, ... starting at (1, 0).
// P(2k) = c^k (0,1), P(2k+1) = c^k (1,n); the preinjective series is the
// mirror image under the inverse transformation.  For n = 1 the series
// are finite (three modules) and the result is truncated accordingly.
std::vector<DimVector> preprojectiveDims(KroneckerIndex n, int count);
std::vector<DimVector> preinjectiveDims(KroneckerIndex n, int count);

// Dimension vectors of cover-thin modules:
//   (x <= y and 0 < y <= (n-1) x + 1) or (y <= x and 0 < x <= (n-1) y + 1).
bool coverThinExists(KroneckerIndex n, DimVector v);

}  // namespace kronrep
