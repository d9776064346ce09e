#include "kronrep/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "kronrep/errors.hpp"
#include "kronrep/module_io.hpp"
#include "kronrep/root_system.hpp"
#include "kronrep/theorem.hpp"

namespace kronrep::cli {

namespace {

// Thrown for bad flag values discovered after parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const char* yesNo(bool b) { return b ? "true" : "false"; }

OutputFormat parseFormat(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "dot") return OutputFormat::Dot;
    if (s == "text") return OutputFormat::Text;
    throw UsageError("unknown format '" + s + "' (expected json, dot or text)");
}

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

KroneckerModule loadModule(const std::string& path) {
    const std::string text = readFile(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    return moduleFromJson(j);
}

std::vector<int> parsePermutation(const std::string& text, int n) {
    auto sigma = parseIntList(text);
    if (static_cast<int>(sigma.size()) != n) throw UsageError("--perm needs n = " + std::to_string(n) + " entries");
    return sigma;
}

struct Flags {
    int n = 3;
    std::string field = "f2";
    std::uint64_t seed = kDefaultSeed;
    int budget = kDefaultEnumerationBudget;
    std::string format = "text";
    bool fieldGiven = false;
};

RunConfig makeConfig(const Flags& f) {
    RunConfig cfg;
    if (f.n < 1) throw UsageError("-n must be at least 1");
    if (f.n > kMaxArrows) throw UsageError("-n must be at most " + std::to_string(kMaxArrows));
    cfg.n = f.n;
    try {
        cfg.field = FieldSpec::parse(f.field);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    cfg.seed = f.seed;
    if (f.budget < 2) throw UsageError("--budget must be at least 2");
    cfg.enumerationBudget = f.budget;
    cfg.outputFormat = parseFormat(f.format);
    return cfg;
}

int cmdClassify(const RunConfig& cfg, DimVector v, std::ostream& out) {
    const KroneckerIndex n(cfg.n);
    const RootClass rc = classify(n, v);
    const bool thin = !v.isZero() && coverThinExists(n, v);
    if (cfg.outputFormat == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["n"] = cfg.n;
        j["dim"] = {v.x, v.y};
        j["class"] = toString(rc.tag);
        j["q"] = rc.quadraticValue;
        if (cfg.n >= 2)
            j["inFundamentalDomain"] = inFundamentalDomain(n, v);
        else
            j["inFundamentalDomain"] = nullptr;
        j["coverThin"] = thin;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "vector " << v << " n=" << cfg.n << '\n';
    out << "class: " << toString(rc.tag) << '\n';
    out << "q: " << rc.quadraticValue << '\n';
    out << "in fundamental domain: " << (cfg.n >= 2 ? yesNo(inFundamentalDomain(n, v)) : "n/a") << '\n';
    out << "cover-thin: " << yesNo(thin) << '\n';
    return kExitOk;
}

int cmdConstruct(const RunConfig& cfg, DimVector v, const std::string& compositionText, const std::string& permText,
                 std::ostream& out, std::ostream& err) {
    const KroneckerIndex n(cfg.n);
    if (!coverThinExists(n, v)) {
        if (v.isZero())
            err << "no cover-thin module of dimension (0,0)\n";
        else if (v.x <= v.y)
            err << "no cover-thin module: y > (n-1)x+1\n";
        else
            err << "no cover-thin module: x > (n-1)y+1\n";
        return kExitNegative;
    }
    std::optional<Composition> composition;
    if (!compositionText.empty()) composition = Composition{parseIntList(compositionText)};
    LabeledSubtree tree = constructCoverThin(n, v, composition);
    if (!permText.empty()) tree = permuteLabels(tree, parsePermutation(permText, cfg.n));
    const KroneckerModule module = pushdown(tree, cfg.field);
    const CoefficientQuiverReport report = coefficientQuiverReport(module);
    switch (cfg.outputFormat) {
        case OutputFormat::Json: {
            nlohmann::ordered_json j = toJson(module);
            j["subtree"] = toJson(tree);
            j["coefficientQuiver"] = toJson(report);
            out << j.dump(2) << '\n';
            break;
        }
        case OutputFormat::Dot:
            out << toDot(tree) << coefficientQuiverDot(module);
            break;
        case OutputFormat::Text:
            out << "dimension vector " << module.dim() << " over " << cfg.field.name() << '\n';
            out << "code " << canonicalCode(tree).code << '\n';
            for (int label = 1; label <= cfg.n; ++label) {
                out << "alpha" << label << ":\n";
                const auto& a = module.map(label);
                for (std::size_t r = 0; r < a.rows(); ++r) {
                    out << ' ';
                    for (std::size_t c = 0; c < a.cols(); ++c) out << ' ' << a(r, c).str();
                    out << '\n';
                }
            }
            out << "nonzeros " << report.totalNonzeros << ", tree presentation " << yesNo(report.isTreePresentation)
                << '\n';
            break;
    }
    return kExitOk;
}

int cmdEnumerate(const RunConfig& cfg, DimVector v, std::ostream& out) {
    const KroneckerIndex n(cfg.n);
    const auto trees = enumerateSubtrees(n, static_cast<int>(v.x), static_cast<int>(v.y), cfg.enumerationBudget);
    if (cfg.outputFormat == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["n"] = cfg.n;
        j["dim"] = {v.x, v.y};
        j["classes"] = trees.size();
        j["codes"] = nlohmann::ordered_json::array();
        for (const auto& t : trees) j["codes"].push_back(canonicalCode(t).code);
        out << j.dump(2) << '\n';
    } else if (cfg.outputFormat == OutputFormat::Dot) {
        for (std::size_t i = 0; i < trees.size(); ++i) out << toDot(trees[i], "class" + std::to_string(i));
    } else {
        out << "n=" << cfg.n << " dim=" << v << " classes=" << trees.size() << '\n';
        for (const auto& t : trees) out << canonicalCode(t).code << '\n';
    }
    return trees.empty() ? kExitNegative : kExitOk;
}

int cmdVerify(const RunConfig& cfg, bool fieldGiven, int maxTotal, std::ostream& out) {
    VerifyOptions options;
    if (fieldGiven) options.fields = {cfg.field};
    options.end.seed = cfg.seed;
    options.budget = cfg.enumerationBudget;
    const TheoremReport report = verifyTheoremWindow(KroneckerIndex(cfg.n), maxTotal, options);
    if (cfg.outputFormat == OutputFormat::Json) {
        out << toJson(report).dump(2) << '\n';
    } else {
        out << "n=" << report.n << " window x+y<=" << report.maxTotalDim << '\n';
        for (const auto& r : report.roots) {
            out << toString(r.status) << ' ' << r.root << " classes=" << r.classesFound << " required=" << r.required;
            if (!r.note.empty()) out << " (" << r.note << ')';
            out << '\n';
        }
        out << (report.pass() ? "PASS" : "FAIL") << ": " << report.roots.size() << " imaginary roots, "
            << report.count(RootStatus::Fail) << " counterexamples, " << report.count(RootStatus::Skipped)
            << " skipped\n";
    }
    return report.pass() ? kExitOk : kExitNegative;
}

int cmdReduce(const RunConfig& cfg, DimVector v, std::ostream& out) {
    const KroneckerIndex n(cfg.n);
    const Reduction r = reduceToFundamentalDomain(n, v);
    if (cfg.outputFormat == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["n"] = cfg.n;
        j["dim"] = {v.x, v.y};
        j["representative"] = {r.representative.x, r.representative.y};
        j["power"] = r.power;
        out << j.dump(2) << '\n';
    } else {
        out << v << " -> " << r.representative << " after " << r.power << " Coxeter steps\n";
    }
    return kExitOk;
}

int cmdSeries(const RunConfig& cfg, int count, bool injective, std::ostream& out) {
    const KroneckerIndex n(cfg.n);
    const auto dims = injective ? preinjectiveDims(n, count) : preprojectiveDims(n, count);
    if (cfg.outputFormat == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["n"] = cfg.n;
        j["series"] = injective ? "preinjective" : "preprojective";
        j["dims"] = nlohmann::ordered_json::array();
        for (const auto& d : dims) j["dims"].push_back({d.x, d.y});
        out << j.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < dims.size(); ++i)
            out << (injective ? "I" : "P") << i << ' ' << dims[i] << " q=" << titsForm(n, dims[i]) << '\n';
    }
    return kExitOk;
}

int cmdHom(const RunConfig& cfg, const std::string& a, const std::string& b, std::ostream& out) {
    const KroneckerModule m = loadModule(a);
    const KroneckerModule nm = loadModule(b);
    const HomSpace h = homDim(m, nm);
    if (cfg.outputFormat == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["dimension"] = h.dimension;
        out << j.dump(2) << '\n';
    } else {
        out << "dim Hom = " << h.dimension << '\n';
    }
    return kExitOk;
}

int cmdDecide(const RunConfig& cfg, const std::string& path, std::ostream& out) {
    const KroneckerModule m = loadModule(path);
    EndOptions options;
    options.seed = cfg.seed;
    const EndVerdict v = endIsLocal(m, options);
    if (cfg.outputFormat == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["verdict"] = toString(v.verdict);
        j["endDimension"] = v.endDimension;
        if (v.splitting) {
            j["splitting"] = {{v.splitting->first.x, v.splitting->first.y},
                              {v.splitting->second.x, v.splitting->second.y}};
        }
        out << j.dump(2) << '\n';
    } else {
        out << toString(v.verdict) << " (dim End = " << v.endDimension << ")\n";
    }
    return v.verdict == Decomposition::Indecomposable ? kExitOk : kExitNegative;
}

}  // namespace

int budgetFromEnvironment() {
    const char* env = std::getenv("KRONREP_BUDGET");
    if (!env || !*env) return kDefaultEnumerationBudget;
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 2 || value > 64) return kDefaultEnumerationBudget;
    return static_cast<int>(value);
}

std::string regionCsv(KroneckerIndex n, std::int64_t maxCoord) {
    std::ostringstream os;
    os << "x,y,q,class,in_cone,in_F,cover_thin\n";
    for (std::int64_t x = 0; x <= maxCoord; ++x)
        for (std::int64_t y = 0; y <= maxCoord; ++y) {
            const DimVector v{x, y};
            if (v.isZero()) continue;
            const RootClass rc = classify(n, v);
            const bool cone = rc.tag == RootTag::ImaginaryRoot;
            const bool inF = n.value() >= 2 && inFundamentalDomain(n, v);
            os << x << ',' << y << ',' << rc.quadraticValue << ',' << toString(rc.tag) << ',' << cone << ',' << inF
               << ',' << coverThinExists(n, v) << '\n';
        }
    return os.str();
}

std::vector<int> parseIntList(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw DomainError("malformed integer list '" + text + "'");
        }
        if (used != item.size()) throw DomainError("malformed integer list '" + text + "'");
        out.push_back(value);
    }
    if (out.empty()) throw DomainError("empty integer list");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tree modules over the n-Kronecker algebra", "kronrep"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    flags.budget = budgetFromEnvironment();
    app.add_option("-n,--arrows", flags.n, "number of arrows n");
    app.add_option("--field", flags.field, "field: f2, f3, f<p> or q")
        ->each([&](const std::string&) { flags.fieldGiven = true; });
    app.add_option("--seed", flags.seed, "seed for randomized decisions");
    app.add_option("--budget", flags.budget, "maximum vertex count for exhaustive enumeration");
    app.add_option("--format", flags.format, "output format: json, dot or text");

    std::int64_t x = 0, y = 0;
    std::string composition, perm, fileA, fileB;
    int maxValue = 0, count = 6;
    bool injective = false;

    auto addVector = [&](CLI::App* sub) {
        sub->add_option("x", x, "dimension at the source")->required()->check(CLI::NonNegativeNumber);
        sub->add_option("y", y, "dimension at the sink")->required()->check(CLI::NonNegativeNumber);
    };
    auto* classifySub = app.add_subcommand("classify", "root class, Tits form and region membership");
    addVector(classifySub);
    auto* constructSub = app.add_subcommand("construct", "cover-thin tree module of a dimension vector");
    addVector(constructSub);
    constructSub->add_option("--composition", composition, "composition y(1),...,y(x)");
    constructSub->add_option("--perm", perm, "label permutation as images of 1..n");
    auto* enumerateSub = app.add_subcommand("enumerate", "classes of subtrees with x sources and y sinks");
    addVector(enumerateSub);
    auto* verifySub = app.add_subcommand("verify", "check the tree-module bound on a window of imaginary roots");
    verifySub->add_option("--max", maxValue, "largest total dimension x+y")->required()->check(CLI::NonNegativeNumber);
    auto* regionSub = app.add_subcommand("region", "CSV of lattice points with root and region data");
    regionSub->add_option("--max", maxValue, "largest coordinate")->required()->check(CLI::NonNegativeNumber);
    auto* reduceSub = app.add_subcommand("reduce", "move an imaginary root into the fundamental domain");
    addVector(reduceSub);
    auto* seriesSub = app.add_subcommand("series", "preprojective or preinjective dimension vectors");
    seriesSub->add_option("--count", count, "number of terms")->check(CLI::PositiveNumber);
    seriesSub->add_flag("--injective", injective, "preinjective series instead of preprojective");
    auto* homSub = app.add_subcommand("hom", "dimension of Hom between two module JSON files");
    homSub->add_option("first", fileA)->required();
    homSub->add_option("second", fileB)->required();
    auto* decideSub = app.add_subcommand("decide", "indecomposability verdict for a module JSON file");
    decideSub->add_option("module", fileA)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig cfg = makeConfig(flags);
        const DimVector v{x, y};
        if (*classifySub) return cmdClassify(cfg, v, out);
        if (*constructSub) return cmdConstruct(cfg, v, composition, perm, out, err);
        if (*enumerateSub) return cmdEnumerate(cfg, v, out);
        if (*verifySub) return cmdVerify(cfg, flags.fieldGiven, maxValue, out);
        if (*regionSub) {
            out << regionCsv(KroneckerIndex(cfg.n), maxValue);
            return kExitOk;
        }
        if (*reduceSub) return cmdReduce(cfg, v, out);
        if (*seriesSub) return cmdSeries(cfg, count, injective, out);
        if (*homSub) return cmdHom(cfg, fileA, fileB, out);
        if (*decideSub) return cmdDecide(cfg, fileA, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceError& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNegative;
    }
    return kExitUsage;
}

}  // namespace kronrep::cli
