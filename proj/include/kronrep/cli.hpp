#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kronrep/cover_tree.hpp"
#include "kronrep/representation.hpp"

namespace kronrep::cli {

enum class OutputFormat { Json, Dot, Text };

struct RunConfig {
    int n = 3;
    FieldSpec field = FieldSpec::prime(2);
    std::uint64_t seed = kDefaultSeed;
    int enumerationBudget = kDefaultEnumerationBudget;
    OutputFormat outputFormat = OutputFormat::Text;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// Budget from KRONREP_BUDGET when set to an integer, the default otherwise.
int budgetFromEnvironment();

// CSV of lattice points 0 <= x, y <= maxCoord except the origin, with columns
// x,y,q,class,in_cone,in_F,cover_thin (booleans as 0/1).
std::string regionCsv(KroneckerIndex n, std::int64_t maxCoord);

// "a,b,c" -> {a, b, c}.  Throws DomainError on malformed lists.
std::vector<int> parseIntList(const std::string& text);

// Runs one command line (without the program name).  Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kronrep::cli
