#pragma once

// End-to-end check that every positive imaginary root in a window carries at
// least n pairwise non-isomorphic tree modules, built as push-downs of
// cover-thin subtrees.

#include <string>
#include <vector>

#include "kronrep/cover_tree.hpp"
#include "kronrep/representation.hpp"

namespace kronrep {

// Label permutations applied to a construction: all of S_n for n <= 6,
// otherwise the n(n-1) permutations sending (1, n) to an ordered pair (a, b)
// (remaining labels in increasing order) together with the n rotations.
std::vector<std::vector<int>> familyPermutations(int n);

// Distinct deck-translation classes obtained from constructCoverThin(n, v)
// under familyPermutations, normalized and sorted by canonical code.
std::vector<LabeledSubtree> coverThinFamily(KroneckerIndex n, DimVector v);

struct FieldVerdict {
    std::string field;
    Decomposition verdict = Decomposition::Undecided;
};

struct ModuleCheck {
    std::string code;
    DimVector dim;
    std::size_t nonzeros = 0;
    bool connected = false;
    bool acyclic = false;
    bool treePresentation = false;
    std::vector<FieldVerdict> verdicts;
};

enum class RootStatus { Pass, Fail, Skipped };

std::string toString(RootStatus s);

struct RootReport {
    DimVector root;
    int required = 0;
    std::size_t classesFound = 0;
    bool pairwiseNonIsomorphic = false;
    std::vector<ModuleCheck> modules;
    RootStatus status = RootStatus::Fail;
    std::string note;
};

struct TheoremReport {
    int n = 0;
    int maxTotalDim = 0;
    std::vector<std::string> fields;
    std::vector<RootReport> roots;

    std::size_t count(RootStatus s) const;
    // Every root passed; skipped roots count as not passed.
    bool pass() const;
};

struct VerifyOptions {
    std::vector<FieldSpec> fields{FieldSpec::prime(2), FieldSpec::prime(3)};
    EndOptions end{};
    int budget = kDefaultEnumerationBudget;
    // Confirm pairwise non-isomorphism with the Hom-space search over the
    // first field, on top of distinct canonical codes.
    bool matrixIsoCheck = true;
};

// Throws ResourceError if maxTotalDim exceeds options.budget.
TheoremReport verifyTheoremWindow(KroneckerIndex n, int maxTotalDim, const VerifyOptions& options = {});

}  // namespace kronrep
