#include <doctest.h>

#include <algorithm>
#include <set>

#include "kronrep/errors.hpp"
#include "kronrep/theorem.hpp"

using namespace kronrep;

TEST_CASE("family permutations") {
    CHECK(familyPermutations(3).size() == 6);
    CHECK(familyPermutations(6).size() == 720);
    for (int n : {2, 4, 7, 9}) {
        const auto perms = familyPermutations(n);
        std::set<std::vector<int>> distinct(perms.begin(), perms.end());
        CHECK(distinct.size() == perms.size());
        std::vector<int> id(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i + 1;
        CHECK(distinct.count(id) == 1);
        std::set<std::pair<int, int>> ends;
        for (const auto& p : perms) {
            CHECK(std::is_permutation(p.begin(), p.end(), id.begin()));
            ends.insert({p.front(), p.back()});
        }
        CHECK(ends.size() == static_cast<std::size_t>(n * (n - 1)));
    }
}

TEST_CASE("construction families") {
    CHECK(coverThinFamily(KroneckerIndex(4), {2, 3}).size() >= 6);
    CHECK(coverThinFamily(KroneckerIndex(3), {1, 1}).size() == 3);
    for (std::int64_t m = 1; m <= 5; ++m) CHECK(coverThinFamily(KroneckerIndex(2), {m, m}).size() == 2);
    // Real roots: the star and its dual are unique up to translation.
    CHECK(coverThinFamily(KroneckerIndex(3), {1, 3}).size() == 1);
    CHECK(coverThinFamily(KroneckerIndex(3), {0, 1}).size() == 1);

    const auto fam = coverThinFamily(KroneckerIndex(5), {3, 5});
    std::set<std::string> codes;
    for (const auto& t : fam) {
        CHECK(t.dim() == DimVector{3, 5});
        codes.insert(canonicalCode(t).code);
    }
    CHECK(codes.size() == fam.size());
    CHECK(std::is_sorted(fam.begin(), fam.end(), [](const auto& a, const auto& b) {
        return canonicalCode(a) < canonicalCode(b);
    }));
}

TEST_CASE("window verification passes at desk scale") {
    const auto r = verifyTheoremWindow(KroneckerIndex(3), 8);
    CHECK(r.pass());
    CHECK(r.count(RootStatus::Fail) == 0);
    CHECK(r.fields == std::vector<std::string>{"F2", "F3"});
    for (const auto& root : r.roots) {
        CHECK(isPositiveImaginaryRoot(KroneckerIndex(3), root.root));
        CHECK(root.classesFound >= 3);
        CHECK(root.pairwiseNonIsomorphic);
        for (const auto& m : root.modules) {
            CHECK(m.nonzeros == static_cast<std::size_t>(root.root.total() - 1));
            CHECK(m.treePresentation);
            for (const auto& v : m.verdicts) CHECK(v.verdict == Decomposition::Indecomposable);
        }
    }
    // (1,1) (1,2) (2,1) (2,2) (2,3) (3,2) (2,4) (3,3) (4,2) (2,5) (3,4) (4,3) (5,2) (3,5) (4,4) (5,3)
    CHECK(r.roots.size() == 16);

    CHECK(verifyTheoremWindow(KroneckerIndex(2), 8).pass());
    CHECK(verifyTheoremWindow(KroneckerIndex(2), 8).roots.size() == 4);
}

TEST_CASE("roots outside the cover-thin region are skipped, not passed") {
    VerifyOptions opt;
    opt.budget = 14;
    opt.fields = {FieldSpec::prime(2)};
    const auto r = verifyTheoremWindow(KroneckerIndex(4), 14, opt);
    CHECK(r.count(RootStatus::Skipped) == 2);
    CHECK(r.count(RootStatus::Fail) == 0);
    CHECK_FALSE(r.pass());
    const auto skipped = std::find_if(r.roots.begin(), r.roots.end(),
                                      [](const auto& root) { return root.status == RootStatus::Skipped; });
    REQUIRE(skipped != r.roots.end());
    CHECK(skipped->root == DimVector{3, 11});
}

TEST_CASE("window size respects the budget") {
    CHECK_THROWS_AS(verifyTheoremWindow(KroneckerIndex(3), 13), ResourceError);
    VerifyOptions opt;
    opt.budget = 4;
    CHECK_THROWS_AS(verifyTheoremWindow(KroneckerIndex(3), 5, opt), ResourceError);
}

TEST_CASE("status names") {
    CHECK(toString(RootStatus::Pass) == "PASS");
    CHECK(toString(RootStatus::Fail) == "FAIL");
    CHECK(toString(RootStatus::Skipped) == "SKIP");
}
