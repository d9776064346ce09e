#include "kronrep/root_system.hpp"

#include <cstdint>
#include <ostream>
#include <sstream>

#include "kronrep/errors.hpp"

namespace kronrep {

namespace {

std::int64_t checkedAdd(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticRangeError("integer overflow in addition");
    return r;
}

std::int64_t checkedSub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticRangeError("integer overflow in subtraction");
    return r;
}

std::int64_t checkedMul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticRangeError("integer overflow in multiplication");
    return r;
}

bool aboveDomain(std::int64_t n, DimVector v) { return v.y > checkedMul(n - 1, v.x); }

}  // namespace

KroneckerIndex::KroneckerIndex(int n) : n_(n) {
    if (n < 1) throw DomainError("number of arrows must be at least 1, got " + std::to_string(n));
}

std::int64_t DimVector::total() const { return checkedAdd(x, y); }

std::ostream& operator<<(std::ostream& os, const DimVector& v) {
    return os << '(' << v.x << ',' << v.y << ')';
}

std::string toString(const DimVector& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string toString(RootTag tag) {
    switch (tag) {
        case RootTag::RealRoot: return "real";
        case RootTag::ImaginaryRoot: return "imaginary";
        case RootTag::NotARoot: return "none";
    }
    return "none";
}

std::int64_t titsForm(KroneckerIndex n, DimVector v) {
    // Every term fits in 128 bits for int64 inputs with |x|,|y| <= 2^31; only
    // the final value has to fit in 64 bits.
    constexpr std::int64_t kMaxCoord = std::int64_t{1} << 31;
    if (v.x > kMaxCoord || v.x < -kMaxCoord || v.y > kMaxCoord || v.y < -kMaxCoord)
        throw ArithmeticRangeError("Tits form argument out of range: " + toString(v));
    const __int128 x = v.x;
    const __int128 y = v.y;
    const __int128 q = x * x + y * y - __int128{n.value()} * x * y;
    if (q > INT64_MAX || q < INT64_MIN) throw ArithmeticRangeError("Tits form value out of range for " + toString(v));
    return static_cast<std::int64_t>(q);
}

RootClass classify(KroneckerIndex n, DimVector v) {
    const std::int64_t q = titsForm(n, v);
    if (q == 1) return {RootTag::RealRoot, q};
    if (q <= 0 && !v.isZero()) return {RootTag::ImaginaryRoot, q};
    return {RootTag::NotARoot, q};
}

bool isPositiveImaginaryRoot(KroneckerIndex n, DimVector v) {
    return v.isNonnegative() && classify(n, v).tag == RootTag::ImaginaryRoot;
}

DimVector reflectSource(KroneckerIndex n, DimVector v) {
    return {checkedSub(checkedMul(n.value(), v.y), v.x), v.y};
}

DimVector reflectSink(KroneckerIndex n, DimVector v) {
    return {v.x, checkedSub(checkedMul(n.value(), v.x), v.y)};
}

DimVector coxeter(KroneckerIndex n, DimVector v, CoxeterConvention convention) {
    if (convention == CoxeterConvention::Forward) return reflectSink(n, reflectSource(n, v));
    return reflectSource(n, reflectSink(n, v));
}

DimVector coxeterPower(KroneckerIndex n, DimVector v, std::int64_t k) {
    const auto dir = k >= 0 ? CoxeterConvention::Forward : CoxeterConvention::Inverse;
    for (std::int64_t i = 0; i < (k >= 0 ? k : -k); ++i) v = coxeter(n, v, dir);
    return v;
}

bool inFundamentalDomain(KroneckerIndex n, DimVector v) {
    const std::int64_t arrows = n.value();
    if (arrows == 1) throw UnsupportedIndexError("fundamental domain undefined for n = 1: no imaginary roots");
    if (!v.isNonnegative()) return false;
    if (arrows == 2) return v.x == v.y && v.x >= 1;
    // x/(n-1) < y <= (n-1) x, cleared of denominators.
    return v.x < checkedMul(arrows - 1, v.y) && v.y <= checkedMul(arrows - 1, v.x);
}

Reduction reduceToFundamentalDomain(KroneckerIndex n, DimVector v) {
    if (!isPositiveImaginaryRoot(n, v))
        throw DomainError("not a positive imaginary root: " + toString(v));
    // Forward pushes imaginary roots above F (towards the steep eigenline),
    // Inverse pushes them below; walk against the side we are on.
    Reduction r{v, 0};
    // An int64 orbit overflows long before 128 steps.
    for (int step = 0; step < 128; ++step) {
        if (inFundamentalDomain(n, r.representative)) return r;
        if (aboveDomain(n.value(), r.representative)) {
            r.representative = coxeter(n, r.representative, CoxeterConvention::Inverse);
            --r.power;
        } else {
            r.representative = coxeter(n, r.representative, CoxeterConvention::Forward);
            ++r.power;
        }
        if (!r.representative.isNonnegative())
            throw ArithmeticRangeError("Coxeter orbit left the positive cone while reducing " + toString(v));
    }
    throw ArithmeticRangeError("Coxeter reduction did not terminate for " + toString(v));
}

namespace {

std::vector<DimVector> coxeterSeries(KroneckerIndex n, int count, DimVector first, DimVector second,
                                     CoxeterConvention dir) {
    if (count < 1) throw DomainError("series length must be at least 1");
    std::vector<DimVector> out;
    out.reserve(static_cast<std::size_t>(count));
    DimVector even = first;
    DimVector odd = second;
    for (int i = 0; i < count; ++i) {
        DimVector& next = (i % 2 == 0) ? even : odd;
        if (!next.isNonnegative() || next.isZero()) break;  // only for n = 1
        out.push_back(next);
        if (i % 2 == 1) {
            even = coxeter(n, even, dir);
            odd = coxeter(n, odd, dir);
        }
    }
    return out;
}

}  // namespace

std::vector<DimVector> preprojectiveDims(KroneckerIndex n, int count) {
    return coxeterSeries(n, count, {0, 1}, {1, n.value()}, CoxeterConvention::Forward);
}

std::vector<DimVector> preinjectiveDims(KroneckerIndex n, int count) {
    return coxeterSeries(n, count, {1, 0}, {n.value(), 1}, CoxeterConvention::Inverse);
}

bool coverThinExists(KroneckerIndex n, DimVector v) {
    if (!v.isNonnegative()) return false;
    const std::int64_t slope = n.value() - 1;
    if (v.x <= v.y && 0 < v.y && v.y <= checkedAdd(checkedMul(slope, v.x), 1)) return true;
    if (v.y <= v.x && 0 < v.x && v.x <= checkedAdd(checkedMul(slope, v.y), 1)) return true;
    return false;
}

}  // namespace kronrep
