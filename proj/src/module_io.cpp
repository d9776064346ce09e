#include "kronrep/module_io.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "kronrep/errors.hpp"

namespace kronrep {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json entryToJson(const Rational& e) {
    if (boost::multiprecision::denominator(e) == 1) {
        const auto num = boost::multiprecision::numerator(e);
        if (num <= INT64_MAX && num >= INT64_MIN) return static_cast<std::int64_t>(num);
    }
    return e.str();
}

Rational entryFromJson(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Rational(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw DomainError("matrix entry must be an integer or a string \"a/b\"");
}

ordered_json wordToJson(const CoverVertex& v) {
    ordered_json w = ordered_json::array();
    for (auto letter : v.word()) w.push_back(static_cast<int>(letter));
    return w;
}

CoverVertex wordFromJson(const nlohmann::json& j) {
    if (!j.is_array()) throw DomainError("basis tag must be an array of labels");
    Word w;
    for (const auto& l : j) {
        if (!l.is_number_integer() || l.get<int>() < 1 || l.get<int>() > kMaxArrows)
            throw DomainError("basis tag label out of range");
        w.push_back(static_cast<std::uint8_t>(l.get<int>()));
    }
    return CoverVertex(std::move(w));
}

ordered_json dimToJson(DimVector v) { return ordered_json::array({v.x, v.y}); }

}  // namespace

ordered_json toJson(const KroneckerModule& m) {
    ordered_json j;
    j["n"] = m.arrows().value();
    j["dim"] = dimToJson(m.dim());
    j["field"] = m.field().name();
    ordered_json matrices = ordered_json::array();
    std::size_t nonzeros = 0;
    for (const auto& a : m.maps()) {
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < a.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < a.cols(); ++c) {
                row.push_back(entryToJson(a(r, c)));
                if (a(r, c) != 0) ++nonzeros;
            }
            rows.push_back(std::move(row));
        }
        matrices.push_back(std::move(rows));
    }
    j["matrices"] = std::move(matrices);
    j["nonzeros"] = nonzeros;
    if (const auto& tags = m.basisTags()) {
        ordered_json t;
        t["columns"] = ordered_json::array();
        for (const auto& v : tags->columns) t["columns"].push_back(wordToJson(v));
        t["rows"] = ordered_json::array();
        for (const auto& v : tags->rows) t["rows"].push_back(wordToJson(v));
        j["basisTags"] = std::move(t);
    }
    return j;
}

KroneckerModule moduleFromJson(const nlohmann::json& j) {
    try {
        const KroneckerIndex n(j.at("n").get<int>());
        const FieldSpec field = FieldSpec::parse(j.at("field").get<std::string>());
        const auto& d = j.at("dim");
        if (!d.is_array() || d.size() != 2) throw DomainError("dim must be [x, y]");
        const DimVector dim{d[0].get<std::int64_t>(), d[1].get<std::int64_t>()};
        if (!dim.isNonnegative()) throw DomainError("dim must be nonnegative");
        std::vector<Matrix<Rational>> maps;
        for (const auto& mj : j.at("matrices")) {
            if (!mj.is_array() || mj.size() != static_cast<std::size_t>(dim.y))
                throw DomainError("each matrix needs y rows");
            Matrix<Rational> m(static_cast<std::size_t>(dim.y), static_cast<std::size_t>(dim.x));
            for (std::size_t r = 0; r < m.rows(); ++r) {
                if (!mj[r].is_array() || mj[r].size() != m.cols()) throw DomainError("each row needs x entries");
                for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entryFromJson(mj[r][c]);
            }
            maps.push_back(std::move(m));
        }
        std::optional<BasisTags> tags;
        if (j.contains("basisTags")) {
            BasisTags t;
            for (const auto& w : j.at("basisTags").at("columns")) t.columns.push_back(wordFromJson(w));
            for (const auto& w : j.at("basisTags").at("rows")) t.rows.push_back(wordFromJson(w));
            tags = std::move(t);
        }
        KroneckerModule m(n, field, dim, std::move(maps), std::move(tags));
        if (j.contains("nonzeros") && j.at("nonzeros").get<std::size_t>() != coefficientQuiverReport(m).totalNonzeros)
            throw DomainError("nonzeros field disagrees with the matrices");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed module JSON: ") + e.what());
    }
}

ordered_json toJson(const LabeledSubtree& t) {
    const auto order = canonicalOrder(t);
    std::map<CoverVertex, std::size_t> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
    ordered_json j;
    j["n"] = t.arrows().value();
    j["dim"] = dimToJson(t.dim());
    j["code"] = canonicalCode(t).code;
    j["vertices"] = ordered_json::array();
    for (const auto& v : order) j["vertices"].push_back(wordToJson(v));
    std::vector<std::array<std::size_t, 3>> edges;
    for (const auto& e : t.edges())
        edges.push_back({index[e.source], index[e.sink], static_cast<std::size_t>(e.label)});
    std::sort(edges.begin(), edges.end());
    j["edges"] = ordered_json::array();
    for (const auto& e : edges) j["edges"].push_back(ordered_json::array({e[0], e[1], e[2]}));
    return j;
}

ordered_json toJson(const CoefficientQuiverReport& r) {
    ordered_json j;
    j["totalNonzeros"] = r.totalNonzeros;
    j["connected"] = r.connected;
    j["acyclic"] = r.acyclic;
    j["isTreePresentation"] = r.isTreePresentation;
    return j;
}

ordered_json toJson(const TheoremReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["maxTotalDim"] = r.maxTotalDim;
    j["fields"] = r.fields;
    j["roots"] = ordered_json::array();
    for (const auto& root : r.roots) {
        ordered_json rj;
        rj["root"] = dimToJson(root.root);
        rj["status"] = toString(root.status);
        rj["required"] = root.required;
        rj["classesFound"] = root.classesFound;
        rj["pairwiseNonIsomorphic"] = root.pairwiseNonIsomorphic;
        if (!root.note.empty()) rj["note"] = root.note;
        rj["modules"] = ordered_json::array();
        for (const auto& m : root.modules) {
            ordered_json mj;
            mj["code"] = m.code;
            mj["nonzeros"] = m.nonzeros;
            mj["treePresentation"] = m.treePresentation;
            ordered_json verdicts;
            for (const auto& v : m.verdicts) verdicts[v.field] = toString(v.verdict);
            mj["verdicts"] = std::move(verdicts);
            rj["modules"].push_back(std::move(mj));
        }
        j["roots"].push_back(std::move(rj));
    }
    j["pass"] = r.pass();
    j["counterexamples"] = r.count(RootStatus::Fail);
    j["skipped"] = r.count(RootStatus::Skipped);
    return j;
}

std::string coefficientQuiverDot(const KroneckerModule& m, const std::string& graphName) {
    std::ostringstream os;
    os << "digraph " << graphName << " {\n";
    const auto& tags = m.basisTags();
    for (std::int64_t c = 0; c < m.dim().x; ++c) {
        os << "  c" << c << " [shape=box";
        if (tags) os << ", tooltip=\"" << toString(tags->columns[c]) << "\"";
        os << "];\n";
    }
    for (std::int64_t r = 0; r < m.dim().y; ++r) {
        os << "  r" << r << " [shape=circle";
        if (tags) os << ", tooltip=\"" << toString(tags->rows[r]) << "\"";
        os << "];\n";
    }
    for (int label = 1; label <= m.arrows().value(); ++label) {
        const auto& a = m.map(label);
        for (std::size_t c = 0; c < a.cols(); ++c)
            for (std::size_t r = 0; r < a.rows(); ++r) {
                if (a(r, c) == 0) continue;
                os << "  c" << c << " -> r" << r << " [label=\"α" << label;
                if (a(r, c) != 1) os << "·" << a(r, c).str();
                os << "\"];\n";
            }
    }
    os << "}\n";
    return os.str();
}

}  // namespace kronrep
