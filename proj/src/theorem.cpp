#include "kronrep/theorem.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "kronrep/errors.hpp"

namespace kronrep {

std::vector<std::vector<int>> familyPermutations(int n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 1);
    std::vector<std::vector<int>> out;
    if (n <= 6) {
        std::vector<int> sigma = id;
        do out.push_back(sigma);
        while (std::next_permutation(sigma.begin(), sigma.end()));
        return out;
    }
    std::set<std::vector<int>> seen;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            if (a == b) continue;
            std::vector<int> sigma(n);
            sigma[0] = a;
            sigma[n - 1] = b;
            int next = 1;
            for (int i = 1; i + 1 < n; ++i) {
                while (next == a || next == b) ++next;
                sigma[i] = next++;
            }
            if (seen.insert(sigma).second) out.push_back(sigma);
        }
    for (int shift = 0; shift < n; ++shift) {
        std::vector<int> sigma(n);
        for (int i = 0; i < n; ++i) sigma[i] = (i + shift) % n + 1;
        if (seen.insert(sigma).second) out.push_back(sigma);
    }
    return out;
}

std::vector<LabeledSubtree> coverThinFamily(KroneckerIndex n, DimVector v) {
    const LabeledSubtree base = constructCoverThin(n, v);
    std::map<CanonicalCode, LabeledSubtree> classes;
    for (const auto& sigma : familyPermutations(n.value())) {
        LabeledSubtree t = permuteLabels(base, sigma);
        CanonicalCode code = canonicalCode(t);
        if (classes.find(code) == classes.end()) classes.emplace(std::move(code), normalize(t));
    }
    std::vector<LabeledSubtree> out;
    for (auto& [code, t] : classes) out.push_back(std::move(t));
    return out;
}

std::string toString(RootStatus s) {
    switch (s) {
        case RootStatus::Pass: return "PASS";
        case RootStatus::Fail: return "FAIL";
        case RootStatus::Skipped: return "SKIP";
    }
    return "FAIL";
}

std::size_t TheoremReport::count(RootStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(roots.begin(), roots.end(), [s](const RootReport& r) { return r.status == s; }));
}

bool TheoremReport::pass() const { return count(RootStatus::Pass) == roots.size(); }

namespace {

RootReport checkRoot(KroneckerIndex n, DimVector root, const VerifyOptions& options) {
    RootReport report;
    report.root = root;
    report.required = n.value();
    if (!coverThinExists(n, root)) {
        // Such roots need Coxeter reflections of the cover, which push-downs
        // of thin modules do not provide.
        report.status = RootStatus::Skipped;
        report.note = "outside the cover-thin region";
        return report;
    }
    const auto family = coverThinFamily(n, root);
    report.classesFound = family.size();
    bool allGood = true;
    std::vector<std::vector<KroneckerModule>> modulesByField(options.fields.size());
    for (const auto& t : family) {
        ModuleCheck check;
        check.code = canonicalCode(t).code;
        for (std::size_t fi = 0; fi < options.fields.size(); ++fi) {
            KroneckerModule m = pushdown(t, options.fields[fi]);
            if (fi == 0) {
                const auto q = coefficientQuiverReport(m);
                check.dim = m.dim();
                check.nonzeros = q.totalNonzeros;
                check.connected = q.connected;
                check.acyclic = q.acyclic;
                check.treePresentation = q.isTreePresentation;
            }
            const auto verdict = endIsLocal(m, options.end);
            check.verdicts.push_back({options.fields[fi].name(), verdict.verdict});
            allGood = allGood && verdict.verdict == Decomposition::Indecomposable;
            modulesByField[fi].push_back(std::move(m));
        }
        allGood = allGood && check.treePresentation && check.dim == root &&
                  check.nonzeros + 1 == static_cast<std::size_t>(root.x + root.y);
        report.modules.push_back(std::move(check));
    }
    report.pairwiseNonIsomorphic = true;
    if (options.matrixIsoCheck && !modulesByField.empty()) {
        const auto& ms = modulesByField.front();
        for (std::size_t i = 0; i < ms.size() && report.pairwiseNonIsomorphic; ++i)
            for (std::size_t j = i + 1; j < ms.size(); ++j) {
                if (matrixIsomorphic(ms[i], ms[j], options.end) != IsoVerdict::NotIsomorphic) {
                    report.pairwiseNonIsomorphic = false;
                    report.note = "modules " + std::to_string(i) + " and " + std::to_string(j) +
                                  " not shown non-isomorphic";
                    break;
                }
            }
    }
    const bool enough = report.classesFound >= static_cast<std::size_t>(report.required);
    report.status = (allGood && enough && report.pairwiseNonIsomorphic) ? RootStatus::Pass : RootStatus::Fail;
    if (!enough) report.note = "fewer than n classes constructed";
    return report;
}

}  // namespace

TheoremReport verifyTheoremWindow(KroneckerIndex n, int maxTotalDim, const VerifyOptions& options) {
    if (maxTotalDim > options.budget)
        throw ResourceError("window " + std::to_string(maxTotalDim) + " exceeds budget " +
                            std::to_string(options.budget));
    if (options.fields.empty()) throw DomainError("verification needs at least one field");
    TheoremReport report;
    report.n = n.value();
    report.maxTotalDim = maxTotalDim;
    for (const auto& f : options.fields) report.fields.push_back(f.name());
    for (std::int64_t total = 1; total <= maxTotalDim; ++total)
        for (std::int64_t x = 0; x <= total; ++x) {
            const DimVector v{x, total - x};
            if (isPositiveImaginaryRoot(n, v)) report.roots.push_back(checkRoot(n, v, options));
        }
    return report;
}

}  // namespace kronrep
