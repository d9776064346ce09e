#include "kronrep/representation.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <random>

#include "kronrep/errors.hpp"

namespace kronrep {

namespace {

bool isPrimeNumber(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t v) {
        while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
        return v;
    }
    // False if a and b were already joined.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

// Field-typed copy of a module's maps.
template <class F>
struct Typed {
    std::size_t x = 0;
    std::size_t y = 0;
    std::vector<Matrix<typename F::Element>> maps;
};

template <class F>
typename F::Element fromRational(const F&, const Rational& r) {
    if constexpr (std::is_same_v<F, PrimeField>)
        return static_cast<std::uint32_t>(boost::multiprecision::numerator(r));
    else
        return r;
}

template <class F>
Rational toRational(const typename F::Element& e) {
    return Rational(e);
}

template <class F>
Matrix<typename F::Element> typedMatrix(const F& f, const Matrix<Rational>& m) {
    Matrix<typename F::Element> out(m.rows(), m.cols(), f.zero());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = fromRational(f, m(r, c));
    return out;
}

template <class F>
Matrix<Rational> rationalMatrix(const Matrix<typename F::Element>& m) {
    Matrix<Rational> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = toRational<F>(m(r, c));
    return out;
}

template <class F>
Typed<F> typed(const F& f, const KroneckerModule& m) {
    Typed<F> t;
    t.x = static_cast<std::size_t>(m.dim().x);
    t.y = static_cast<std::size_t>(m.dim().y);
    for (const auto& a : m.maps()) t.maps.push_back(typedMatrix(f, a));
    return t;
}

template <class F>
struct TypedMorphism {
    Matrix<typename F::Element> source;
    Matrix<typename F::Element> sink;
};

// Unknowns: A (x' x x) row-major, then B (y' x y) row-major.
// Equations: (B M_i - N_i A)(r, c) = 0 for every arrow i, r < y', c < x.
template <class F>
std::vector<TypedMorphism<F>> homBasis(const F& f, const Typed<F>& m, const Typed<F>& n) {
    const std::size_t x = m.x, y = m.y, xp = n.x, yp = n.y;
    const std::size_t unknownsA = xp * x;
    const std::size_t unknowns = unknownsA + yp * y;
    const std::size_t arrows = m.maps.size();
    Matrix<typename F::Element> system(arrows * yp * x, unknowns, f.zero());
    std::size_t row = 0;
    for (std::size_t i = 0; i < arrows; ++i) {
        const auto& mi = m.maps[i];
        const auto& ni = n.maps[i];
        for (std::size_t r = 0; r < yp; ++r) {
            for (std::size_t c = 0; c < x; ++c, ++row) {
                for (std::size_t k = 0; k < y; ++k) system(row, unknownsA + r * y + k) = mi(k, c);
                for (std::size_t k = 0; k < xp; ++k) system(row, k * x + c) = f.neg(ni(r, k));
            }
        }
    }
    std::vector<TypedMorphism<F>> basis;
    for (const auto& v : nullspace(f, std::move(system))) {
        TypedMorphism<F> g{Matrix<typename F::Element>(xp, x, f.zero()), Matrix<typename F::Element>(yp, y, f.zero())};
        for (std::size_t k = 0; k < xp; ++k)
            for (std::size_t c = 0; c < x; ++c) g.source(k, c) = v[k * x + c];
        for (std::size_t r = 0; r < yp; ++r)
            for (std::size_t k = 0; k < y; ++k) g.sink(r, k) = v[unknownsA + r * y + k];
        basis.push_back(std::move(g));
    }
    return basis;
}

template <class F>
Matrix<typename F::Element> combine(const F& f, const std::vector<Matrix<typename F::Element>>& parts,
                                    const std::vector<typename F::Element>& coeffs, std::size_t rows,
                                    std::size_t cols) {
    Matrix<typename F::Element> out(rows, cols, f.zero());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (f.isZero(coeffs[i])) continue;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) out(r, c) = f.add(out(r, c), f.mul(coeffs[i], parts[i](r, c)));
    }
    return out;
}

template <class F>
TypedMorphism<F> combination(const F& f, const std::vector<TypedMorphism<F>>& basis,
                             const std::vector<typename F::Element>& coeffs, const Typed<F>& from,
                             const Typed<F>& to) {
    std::vector<Matrix<typename F::Element>> sources, sinks;
    for (const auto& b : basis) {
        sources.push_back(b.source);
        sinks.push_back(b.sink);
    }
    return {combine(f, sources, coeffs, to.x, from.x), combine(f, sinks, coeffs, to.y, from.y)};
}

template <class F>
std::vector<typename F::Element> randomCoefficients(const F& f, std::size_t count, std::mt19937_64& rng) {
    std::vector<typename F::Element> out;
    out.reserve(count);
    if constexpr (std::is_same_v<F, PrimeField>) {
        std::uniform_int_distribution<std::uint32_t> dist(0, f.p - 1);
        for (std::size_t i = 0; i < count; ++i) out.push_back(dist(rng));
    } else {
        std::uniform_int_distribution<int> dist(-3, 3);
        for (std::size_t i = 0; i < count; ++i) out.push_back(Rational(dist(rng)));
    }
    return out;
}

// Calls visit(coeffs) for every coefficient tuple over F_p; stops when it
// returns true.  Returns whether a visit returned true.
template <class Visit>
bool forEachTuple(std::uint32_t p, std::size_t length, Visit&& visit) {
    std::vector<std::uint32_t> coeffs(length, 0);
    while (true) {
        if (visit(coeffs)) return true;
        std::size_t i = 0;
        while (i < length && ++coeffs[i] == p) coeffs[i++] = 0;
        if (i == length) return false;
    }
}

bool smallEnough(std::uint32_t p, std::size_t dim, const EndOptions& o) {
    if (dim > o.maxExhaustiveDimension) return false;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        total *= p;
        if (total > o.maxExhaustiveElements) return false;
    }
    return true;
}

template <class F>
std::pair<DimVector, DimVector> splittingOf(const F& f, const TypedMorphism<F>& e, const Typed<F>& m) {
    const auto rx = static_cast<std::int64_t>(rank(f, e.source));
    const auto ry = static_cast<std::int64_t>(rank(f, e.sink));
    return {DimVector{rx, ry},
            DimVector{static_cast<std::int64_t>(m.x) - rx, static_cast<std::int64_t>(m.y) - ry}};
}

// phi - lambda, with lambda found from the trace or, over small prime
// fields, by trying every scalar.  Empty when no shift is nilpotent.
template <class F>
std::optional<TypedMorphism<F>> nilpotentShift(const F& f, const TypedMorphism<F>& phi, std::size_t d) {
    auto shifted = [&](const typename F::Element& lambda) {
        TypedMorphism<F> out = phi;
        for (std::size_t i = 0; i < out.source.rows(); ++i) out.source(i, i) = f.sub(out.source(i, i), lambda);
        for (std::size_t i = 0; i < out.sink.rows(); ++i) out.sink(i, i) = f.sub(out.sink(i, i), lambda);
        return out;
    };
    auto nilpotent = [&](const TypedMorphism<F>& t) {
        return rank(f, power(f, t.source, d)) + rank(f, power(f, t.sink, d)) == 0;
    };
    typename F::Element trace = f.zero(), dim = f.zero();
    for (std::size_t i = 0; i < phi.source.rows(); ++i) trace = f.add(trace, phi.source(i, i));
    for (std::size_t i = 0; i < phi.sink.rows(); ++i) trace = f.add(trace, phi.sink(i, i));
    for (std::size_t i = 0; i < d; ++i) dim = f.add(dim, f.one());
    if (!f.isZero(dim)) {
        auto t = shifted(f.mul(trace, f.inv(dim)));
        if (nilpotent(t)) return t;
        return std::nullopt;
    }
    if constexpr (std::is_same_v<F, PrimeField>) {
        if (f.p <= 4096)
            for (std::uint32_t lambda = 0; lambda < f.p; ++lambda)
                if (auto t = shifted(lambda); nilpotent(t)) return t;
    }
    return std::nullopt;
}

// End = k.1 (+) N with every product of d elements of N zero makes every
// element of N nilpotent and everything else a unit: End is local.
template <class F>
bool nilpotentComplement(const F& f, const std::vector<TypedMorphism<F>>& basis, std::size_t x, std::size_t y) {
    const std::size_t d = x + y;
    const std::size_t width = x * x + y * y;
    auto flatten = [&](const std::vector<TypedMorphism<F>>& ms) {
        Matrix<typename F::Element> rows(ms.size(), width);
        for (std::size_t k = 0; k < ms.size(); ++k) {
            std::size_t j = 0;
            for (std::size_t r = 0; r < x; ++r)
                for (std::size_t c = 0; c < x; ++c) rows(k, j++) = ms[k].source(r, c);
            for (std::size_t r = 0; r < y; ++r)
                for (std::size_t c = 0; c < y; ++c) rows(k, j++) = ms[k].sink(r, c);
        }
        return rows;
    };
    auto unflatten = [&](const Matrix<typename F::Element>& rows, std::size_t k) {
        TypedMorphism<F> m{Matrix<typename F::Element>(x, x, f.zero()), Matrix<typename F::Element>(y, y, f.zero())};
        std::size_t j = 0;
        for (std::size_t r = 0; r < x; ++r)
            for (std::size_t c = 0; c < x; ++c) m.source(r, c) = rows(k, j++);
        for (std::size_t r = 0; r < y; ++r)
            for (std::size_t c = 0; c < y; ++c) m.sink(r, c) = rows(k, j++);
        return m;
    };
    // Row-reduced basis of a span.
    auto reduced = [&](const std::vector<TypedMorphism<F>>& ms) {
        auto rows = flatten(ms);
        const std::size_t r = rowReduce(f, rows).size();
        std::vector<TypedMorphism<F>> out;
        for (std::size_t k = 0; k < r; ++k) out.push_back(unflatten(rows, k));
        return out;
    };

    std::vector<TypedMorphism<F>> nil;
    for (const auto& phi : basis) {
        auto t = nilpotentShift(f, phi, d);
        if (!t) return false;
        nil.push_back(std::move(*t));
    }
    nil = reduced(nil);
    if (nil.size() + 1 != basis.size()) return false;

    auto layer = nil;
    for (std::size_t step = 1; step < d && !layer.empty(); ++step) {
        std::vector<TypedMorphism<F>> next;
        for (const auto& a : layer)
            for (const auto& b : nil)
                next.push_back({multiply(f, a.source, b.source), multiply(f, a.sink, b.sink)});
        layer = reduced(next);
    }
    return layer.empty();
}

template <class F>
EndVerdict decide(const F& f, const Typed<F>& m, const EndOptions& options, bool exhaustiveAllowed,
                  std::uint32_t p) {
    const auto basis = homBasis(f, m, m);
    EndVerdict out;
    out.endDimension = basis.size();
    if (basis.size() == 1) {
        out.verdict = Decomposition::Indecomposable;
        out.rule = DecisionRule::BrickShortcut;
        return out;
    }
    const std::size_t d = m.x + m.y;
    auto fittingSplit = [&](const TypedMorphism<F>& phi) {
        TypedMorphism<F> pw{power(f, phi.source, d), power(f, phi.sink, d)};
        const std::size_t r = rank(f, pw.source) + rank(f, pw.sink);
        if (r == 0 || r == d) return false;
        out.verdict = Decomposition::Decomposable;
        out.rule = DecisionRule::FittingSplit;
        out.splitting = splittingOf(f, pw, m);
        return true;
    };
    for (const auto& phi : basis)
        if (fittingSplit(phi)) return out;
    std::mt19937_64 rng(options.seed);
    for (int trial = 0; trial < options.randomTrials; ++trial) {
        if (fittingSplit(combination(f, basis, randomCoefficients(f, basis.size(), rng), m, m))) return out;
    }
    if (nilpotentComplement(f, basis, m.x, m.y)) {
        out.verdict = Decomposition::Indecomposable;
        out.rule = DecisionRule::NilpotentComplement;
        return out;
    }
    if (exhaustiveAllowed && smallEnough(p, basis.size(), options)) {
        const auto idx = identity(f, m.x);
        const auto idy = identity(f, m.y);
        const bool found = forEachTuple(p, basis.size(), [&](const std::vector<std::uint32_t>& raw) {
            std::vector<typename F::Element> coeffs;
            for (auto c : raw) coeffs.push_back(fromRational(f, Rational(c)));
            const auto e = combination(f, basis, coeffs, m, m);
            if (multiply(f, e.source, e.source) != e.source || multiply(f, e.sink, e.sink) != e.sink) return false;
            const bool zero = rank(f, e.source) + rank(f, e.sink) == 0;
            const bool one = e.source == idx && e.sink == idy;
            if (zero || one) return false;
            out.splitting = splittingOf(f, e, m);
            return true;
        });
        out.rule = DecisionRule::IdempotentSearch;
        out.verdict = found ? Decomposition::Decomposable : Decomposition::Indecomposable;
        return out;
    }
    return out;
}

template <class F>
bool invertible(const F& f, const TypedMorphism<F>& g) {
    return isInvertible(f, g.source) && isInvertible(f, g.sink);
}

template <class F>
IsoVerdict isoSearch(const F& f, const Typed<F>& m, const Typed<F>& n, const EndOptions& options,
                     bool exhaustiveAllowed, std::uint32_t p) {
    if (m.x != n.x || m.y != n.y) return IsoVerdict::NotIsomorphic;
    const auto basis = homBasis(f, m, n);
    if (basis.empty()) return IsoVerdict::NotIsomorphic;
    for (const auto& g : basis)
        if (invertible(f, g)) return IsoVerdict::Isomorphic;
    // All nonzero elements of a line have the same rank.
    if (basis.size() == 1) return IsoVerdict::NotIsomorphic;
    std::mt19937_64 rng(options.seed);
    for (int trial = 0; trial < options.randomTrials; ++trial) {
        if (invertible(f, combination(f, basis, randomCoefficients(f, basis.size(), rng), m, n)))
            return IsoVerdict::Isomorphic;
    }
    // Local End(m): m and n are isomorphic iff some composite n -> m -> n
    // of basis maps is a unit, i.e. not nilpotent.
    if (decide(f, m, options, exhaustiveAllowed, p).verdict == Decomposition::Indecomposable) {
        const std::size_t d = m.x + m.y;
        for (const auto& back : homBasis(f, n, m))
            for (const auto& g : basis) {
                const auto a = power(f, multiply(f, back.source, g.source), d);
                const auto b = power(f, multiply(f, back.sink, g.sink), d);
                if (rank(f, a) + rank(f, b) > 0) return IsoVerdict::Isomorphic;
            }
        return IsoVerdict::NotIsomorphic;
    }
    if (exhaustiveAllowed && smallEnough(p, basis.size(), options)) {
        const bool found = forEachTuple(p, basis.size(), [&](const std::vector<std::uint32_t>& raw) {
            std::vector<typename F::Element> coeffs;
            for (auto c : raw) coeffs.push_back(fromRational(f, Rational(c)));
            return invertible(f, combination(f, basis, coeffs, m, n));
        });
        return found ? IsoVerdict::Isomorphic : IsoVerdict::NotIsomorphic;
    }
    return IsoVerdict::Undecided;
}

template <class F>
bool checkHom(const F& f, const Typed<F>& m, const Typed<F>& n, const TypedMorphism<F>& g) {
    if (g.source.rows() != n.x || g.source.cols() != m.x || g.sink.rows() != n.y || g.sink.cols() != m.y)
        return false;
    for (std::size_t i = 0; i < m.maps.size(); ++i) {
        if (multiply(f, g.sink, m.maps[i]) != multiply(f, n.maps[i], g.source)) return false;
    }
    return true;
}

void requireCompatible(const KroneckerModule& m, const KroneckerModule& n) {
    if (!(m.field() == n.field())) throw DomainError("modules are over different fields");
    if (m.arrows() != n.arrows()) throw DomainError("modules have different numbers of arrows");
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint32_t p) {
    if (!isPrimeNumber(p) || p > 65536) throw DomainError("field characteristic must be a prime <= 2^16");
    return FieldSpec(Kind::PrimeField, p);
}

FieldSpec FieldSpec::parse(const std::string& name) {
    if (name == "Q" || name == "q") return rationals();
    if (name.size() >= 2 && (name[0] == 'F' || name[0] == 'f')) {
        const std::string digits = name.substr(1);
        if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 6)
            return prime(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    throw DomainError("unknown field '" + name + "' (expected F<p> or Q)");
}

std::string FieldSpec::name() const {
    return kind_ == Kind::Rationals ? "Q" : "F" + std::to_string(p_);
}

KroneckerModule::KroneckerModule(KroneckerIndex n, FieldSpec field, DimVector dim, std::vector<Matrix<Rational>> maps,
                                 std::optional<BasisTags> tags)
    : n_(n), field_(field), dim_(dim), maps_(std::move(maps)), tags_(std::move(tags)) {
    if (!dim_.isNonnegative()) throw DomainError("module dimension vector must be nonnegative");
    if (static_cast<int>(maps_.size()) != n.value())
        throw DomainError("module needs exactly n = " + std::to_string(n.value()) + " matrices");
    for (const auto& m : maps_) {
        if (m.rows() != static_cast<std::size_t>(dim_.y) || m.cols() != static_cast<std::size_t>(dim_.x))
            throw DomainError("every matrix must have shape y x x");
        if (!field_.isPrime()) continue;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                const Rational& e = m(r, c);
                if (boost::multiprecision::denominator(e) != 1 || e < 0 || e >= field_.characteristic())
                    throw DomainError("matrix entry is not a reduced residue mod " +
                                      std::to_string(field_.characteristic()));
            }
    }
    if (tags_ && (tags_->columns.size() != static_cast<std::size_t>(dim_.x) ||
                  tags_->rows.size() != static_cast<std::size_t>(dim_.y)))
        throw DomainError("basis tags do not match the dimension vector");
}

KroneckerModule pushdown(const LabeledSubtree& t, const FieldSpec& field) {
    BasisTags tags;
    for (const auto& v : canonicalOrder(t)) (v.color() == Color::Source ? tags.columns : tags.rows).push_back(v);
    std::map<CoverVertex, std::size_t> column, row;
    for (std::size_t i = 0; i < tags.columns.size(); ++i) column[tags.columns[i]] = i;
    for (std::size_t i = 0; i < tags.rows.size(); ++i) row[tags.rows[i]] = i;
    const int n = t.arrows().value();
    std::vector<Matrix<Rational>> maps(n, Matrix<Rational>(tags.rows.size(), tags.columns.size()));
    for (const auto& e : t.edges()) maps[e.label - 1](row[e.sink], column[e.source]) = 1;
    const DimVector dim{static_cast<std::int64_t>(tags.columns.size()), static_cast<std::int64_t>(tags.rows.size())};
    return KroneckerModule(t.arrows(), field, dim, std::move(maps), std::move(tags));
}

KroneckerModule directSum(const KroneckerModule& a, const KroneckerModule& b) {
    requireCompatible(a, b);
    const DimVector dim{a.dim().x + b.dim().x, a.dim().y + b.dim().y};
    std::vector<Matrix<Rational>> maps;
    for (std::size_t i = 0; i < a.maps().size(); ++i) {
        Matrix<Rational> m(static_cast<std::size_t>(dim.y), static_cast<std::size_t>(dim.x));
        const auto& ma = a.maps()[i];
        const auto& mb = b.maps()[i];
        for (std::size_t r = 0; r < ma.rows(); ++r)
            for (std::size_t c = 0; c < ma.cols(); ++c) m(r, c) = ma(r, c);
        for (std::size_t r = 0; r < mb.rows(); ++r)
            for (std::size_t c = 0; c < mb.cols(); ++c) m(ma.rows() + r, ma.cols() + c) = mb(r, c);
        maps.push_back(std::move(m));
    }
    return KroneckerModule(a.arrows(), a.field(), dim, std::move(maps));
}

KroneckerModule semisimple(KroneckerIndex n, const FieldSpec& field, DimVector v) {
    std::vector<Matrix<Rational>> maps(n.value(),
                                       Matrix<Rational>(static_cast<std::size_t>(v.y), static_cast<std::size_t>(v.x)));
    return KroneckerModule(n, field, v, std::move(maps));
}

CoefficientQuiverReport coefficientQuiverReport(const KroneckerModule& m) {
    const auto x = static_cast<std::size_t>(m.dim().x);
    const std::size_t d = m.totalDimension();
    CoefficientQuiverReport report;
    UnionFind uf(d);
    report.acyclic = true;
    std::size_t components = d;
    // Columns are nodes 0..x-1, rows x..x+y-1.
    for (const auto& a : m.maps())
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) {
                if (a(r, c) == 0) continue;
                ++report.totalNonzeros;
                if (uf.unite(c, x + r))
                    --components;
                else
                    report.acyclic = false;
            }
    report.connected = components == 1;
    report.isTreePresentation = d > 0 && report.totalNonzeros == d - 1 && report.connected && report.acyclic;
    return report;
}

HomSpace homDim(const KroneckerModule& m, const KroneckerModule& n) {
    requireCompatible(m, n);
    HomSpace out;
    auto collect = [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        for (const auto& g : homBasis(f, typed(f, m), typed(f, n)))
            out.basis.push_back({rationalMatrix<F>(g.source), rationalMatrix<F>(g.sink)});
    };
    if (m.field().isPrime())
        collect(PrimeField{m.field().characteristic()});
    else
        collect(RationalField{});
    out.dimension = out.basis.size();
    return out;
}

bool isHomomorphism(const KroneckerModule& m, const KroneckerModule& n, const Morphism& g) {
    requireCompatible(m, n);
    auto check = [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        return checkHom(f, typed(f, m), typed(f, n), TypedMorphism<F>{typedMatrix(f, g.source), typedMatrix(f, g.sink)});
    };
    if (m.field().isPrime()) return check(PrimeField{m.field().characteristic()});
    return check(RationalField{});
}

std::string toString(Decomposition d) {
    switch (d) {
        case Decomposition::Indecomposable: return "indecomposable";
        case Decomposition::Decomposable: return "decomposable";
        case Decomposition::Undecided: return "undecided";
    }
    return "undecided";
}

std::string toString(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::Isomorphic: return "isomorphic";
        case IsoVerdict::NotIsomorphic: return "not-isomorphic";
        case IsoVerdict::Undecided: return "undecided";
    }
    return "undecided";
}

EndVerdict endIsLocal(const KroneckerModule& m, const EndOptions& options) {
    if (m.totalDimension() == 0) throw DomainError("the zero module has no indecomposability verdict");
    if (m.field().isPrime()) {
        const PrimeField f{m.field().characteristic()};
        return decide(f, typed(f, m), options, true, f.p);
    }
    const RationalField f;
    return decide(f, typed(f, m), options, false, 0);
}

IsoVerdict matrixIsomorphic(const KroneckerModule& m, const KroneckerModule& n, const EndOptions& options) {
    requireCompatible(m, n);
    if (m.field().isPrime()) {
        const PrimeField f{m.field().characteristic()};
        return isoSearch(f, typed(f, m), typed(f, n), options, true, f.p);
    }
    const RationalField f;
    return isoSearch(f, typed(f, m), typed(f, n), options, false, 0);
}

namespace {

// adj[v * n + label - 1] = index of the neighbour along label, or -1.
std::vector<int> labelledAdjacency(const LabeledSubtree& t) {
    const int n = t.arrows().value();
    std::vector<int> adj(t.size() * static_cast<std::size_t>(n), -1);
    auto idx = [&](const CoverVertex& v) {
        return static_cast<int>(std::lower_bound(t.vertices().begin(), t.vertices().end(), v) - t.vertices().begin());
    };
    for (const auto& e : t.edges()) {
        const int s = idx(e.source), k = idx(e.sink);
        adj[static_cast<std::size_t>(s * n + e.label - 1)] = k;
        adj[static_cast<std::size_t>(k * n + e.label - 1)] = s;
    }
    return adj;
}

}  // namespace

std::size_t homDimViaOverlaps(const LabeledSubtree& a, const LabeledSubtree& b) {
    if (a.arrows() != b.arrows()) throw DomainError("subtrees live in covers of different quivers");
    const int n = a.arrows().value();
    const auto adjA = labelledAdjacency(a);
    const auto adjB = labelledAdjacency(b);
    // Aligning v in b with u in a fixes the deck transformation; the walk
    // below traces the component of a ∩ g b through u.  Each component is
    // counted from its smallest vertex of a only.
    std::size_t total = 0;
    std::vector<std::pair<int, int>> stack;
    std::vector<int> seen(a.size(), -1);
    int stamp = 0;
    for (std::size_t u0 = 0; u0 < a.size(); ++u0)
        for (std::size_t v0 = 0; v0 < b.size(); ++v0) {
            if (a.vertices()[u0].color() != b.vertices()[v0].color()) continue;
            ++stamp;
            bool admissible = true, first = true;
            stack.assign(1, {static_cast<int>(u0), static_cast<int>(v0)});
            seen[u0] = stamp;
            while (!stack.empty() && first) {
                const auto [u, v] = stack.back();
                stack.pop_back();
                const bool sink = a.vertices()[static_cast<std::size_t>(u)].color() == Color::Sink;
                for (int l = 0; l < n; ++l) {
                    const int wa = adjA[static_cast<std::size_t>(u * n + l)];
                    const int wb = adjB[static_cast<std::size_t>(v * n + l)];
                    if (wa >= 0 && wb >= 0) {
                        if (seen[static_cast<std::size_t>(wa)] == stamp) continue;
                        if (static_cast<std::size_t>(wa) < u0) {
                            first = false;
                            break;
                        }
                        seen[static_cast<std::size_t>(wa)] = stamp;
                        stack.emplace_back(wa, wb);
                    } else if (sink && wa >= 0) {
                        admissible = false;  // arrow into the component from outside the translate
                    } else if (!sink && wb >= 0) {
                        admissible = false;  // arrow of the translate leaving a
                    }
                }
            }
            if (first && admissible) ++total;
        }
    return total;
}

bool isoCoverThin(const LabeledSubtree& a, const LabeledSubtree& b) {
    return a.arrows() == b.arrows() && canonicalCode(a) == canonicalCode(b);
}

std::vector<std::pair<int, int>> sharedImagePairs(const KroneckerModule& m) {
    std::vector<std::pair<int, int>> out;
    auto scan = [&](const auto& f) {
        const auto t = typed(f, m);
        std::vector<std::size_t> ranks;
        for (const auto& a : t.maps) ranks.push_back(rank(f, a));
        for (std::size_t i = 0; i < t.maps.size(); ++i)
            for (std::size_t j = i + 1; j < t.maps.size(); ++j) {
                if (rank(f, hconcat(t.maps[i], t.maps[j])) < ranks[i] + ranks[j])
                    out.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
            }
    };
    if (m.field().isPrime())
        scan(PrimeField{m.field().characteristic()});
    else
        scan(RationalField{});
    return out;
}

}  // namespace kronrep
