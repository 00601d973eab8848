#pragma once

/*
 * Canonical JSON for function tables, field moduli, job configuration and
 * reports. Tables above 2^20 values may keep their values in a sibling
 * little-endian binary file.
 */

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bent_analysis.hpp"
#include "constructions.hpp"
#include "depth_search.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "function_table.hpp"
#include "json.hpp"
#include "partition.hpp"
#include "space.hpp"

namespace bentpart {

using Json = nlohmann::json;

inline constexpr std::uint64_t inline_values_limit = std::uint64_t{1} << 20;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

inline const Json& member(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) parse_fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(where, "missing key '" + key + "'");
    return *it;
}

inline std::uint64_t as_uint(const Json& j, const std::string& where, std::uint64_t max = ~std::uint64_t{0}) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        parse_fail(where, "expected a non-negative integer");
    const auto v = j.get<std::uint64_t>();
    if (v > max) parse_fail(where, "value " + std::to_string(v) + " exceeds " + std::to_string(max));
    return v;
}

inline void only_keys(const Json& j, const std::vector<std::string>& keys, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
            parse_fail(where, "unknown key '" + it.key() + "'");
}

}  // namespace detail

inline Json field_to_json(const FieldDescriptor& d) { return Json{{"degree", d.degree}, {"modulus", d.modulus}}; }

inline FieldDescriptor field_from_json(const Json& j, std::uint32_t p, const std::string& where) {
    detail::only_keys(j, {"degree", "modulus"}, where);
    FieldDescriptor d;
    d.p = p;
    d.degree = static_cast<std::uint32_t>(detail::as_uint(detail::member(j, "degree", where), where + ".degree", 31));
    const auto& mod = detail::member(j, "modulus", where);
    if (!mod.is_array()) detail::parse_fail(where + ".modulus", "expected an array");
    for (std::size_t i = 0; i < mod.size(); ++i)
        d.modulus.push_back(static_cast<std::uint32_t>(
            detail::as_uint(mod[i], where + ".modulus[" + std::to_string(i) + "]", p - 1)));
    if (d.modulus.size() != d.degree + 1) detail::parse_fail(where + ".modulus", "needs degree + 1 coefficients");
    if (d.modulus.back() != 1) detail::parse_fail(where + ".modulus", "must be monic");
    if (!is_irreducible(p, d.modulus)) detail::parse_fail(where + ".modulus", "is not irreducible");
    return d;
}

inline Json space_to_json(const Space& s) {
    Json a = Json::array();
    for (const auto& c : s.descriptor().components)
        if (c.kind == ComponentDescriptor::Kind::field) a.push_back(Json{{"field", field_to_json(c.field)}});
        else a.push_back(Json{{"vector", c.length}});
    return a;
}

inline SpacePtr space_from_json(const Json& j, std::uint32_t p, const std::string& where) {
    if (!j.is_array() || j.empty()) detail::parse_fail(where, "expected a nonempty array of components");
    SpaceDescriptor d;
    d.p = p;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        const auto& c = j[i];
        if (!c.is_object() || c.size() != 1) detail::parse_fail(w, "expected {\"field\": ...} or {\"vector\": k}");
        if (c.contains("field")) d.components.push_back(ComponentDescriptor::of_field(field_from_json(c["field"], p, w + ".field")));
        else if (c.contains("vector"))
            d.components.push_back(ComponentDescriptor::of_vector(
                static_cast<std::uint32_t>(detail::as_uint(c["vector"], w + ".vector", 64))));
        else detail::parse_fail(w, "unknown component kind");
        if (d.components.back().dimension() == 0) detail::parse_fail(w, "component dimension must be positive");
    }
    try {
        return Space::make(d);
    } catch (const DomainError& e) {
        detail::parse_fail(where, e.what());
    }
}

/* Binary payload encodings. */
inline std::string encoding_for(std::uint64_t codomain_size) {
    return codomain_size <= 256 ? "le-u8" : codomain_size <= 65536 ? "le-u16" : "le-u32";
}

inline std::size_t encoding_width(const std::string& enc, const std::string& where) {
    if (enc == "le-u8") return 1;
    if (enc == "le-u16") return 2;
    if (enc == "le-u32") return 4;
    detail::parse_fail(where, "unknown encoding '" + enc + "'");
}

/*
 * Table as canonical JSON (sorted keys, compact). When values_file is given
 * the values go to that binary file and the JSON references its file name.
 */
inline Json table_to_json(const FunctionTable& F, const std::optional<std::filesystem::path>& values_file = {}) {
    Json j;
    j["p"] = F.p();
    j["domain"] = space_to_json(F.domain());
    j["codomain"] = space_to_json(F.codomain());
    if (values_file) {
        const auto enc = encoding_for(F.codomain().size());
        std::ofstream out(*values_file, std::ios::binary);
        if (!out) throw Error("cannot write " + values_file->string());
        out.write(reinterpret_cast<const char*>(F.values().data()), static_cast<std::streamsize>(F.size()));
        if (!out) throw Error("write failed for " + values_file->string());
        j["values_file"] = values_file->filename().string();
        j["encoding"] = enc;
    } else {
        j["values"] = F.values();
    }
    return j;
}

inline FunctionTable table_from_json(const Json& j, const std::filesystem::path& base_dir = {}) {
    if (!j.is_object()) detail::parse_fail("table", "expected an object");
    const bool binary = j.contains("values_file");
    if (binary) detail::only_keys(j, {"p", "domain", "codomain", "values_file", "encoding"}, "table");
    else detail::only_keys(j, {"p", "domain", "codomain", "values"}, "table");
    const auto p = static_cast<std::uint32_t>(detail::as_uint(detail::member(j, "p", "table"), "p", 251));
    if (!is_prime(p)) detail::parse_fail("p", std::to_string(p) + " is not prime");
    auto dom = space_from_json(detail::member(j, "domain", "table"), p, "domain");
    auto cod = space_from_json(detail::member(j, "codomain", "table"), p, "codomain");
    if (dom->size() > max_table_size) detail::parse_fail("domain", "exceeds the 2^26-point table cap");
    if (cod->size() > max_codomain_size) detail::parse_fail("codomain", "exceeds 256 points");
    std::vector<std::uint8_t> v(dom->size());
    if (binary) {
        const auto& f = j["values_file"];
        if (!f.is_string()) detail::parse_fail("values_file", "expected a path string");
        const auto& e = detail::member(j, "encoding", "table");
        if (!e.is_string()) detail::parse_fail("encoding", "expected a string");
        const auto width = encoding_width(e.get<std::string>(), "encoding");
        const auto path = base_dir / f.get<std::string>();
        std::ifstream in(path, std::ios::binary);
        if (!in) detail::parse_fail("values_file", "cannot open " + path.string());
        std::vector<unsigned char> raw(dom->size() * width);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::uint64_t>(in.gcount()) != raw.size() || in.peek() != EOF)
            detail::parse_fail("values_file", "expected exactly " + std::to_string(raw.size()) + " bytes");
        for (std::uint64_t x = 0; x < dom->size(); ++x) {
            std::uint64_t val = 0;
            for (std::size_t b = 0; b < width; ++b) val |= std::uint64_t{raw[x * width + b]} << (8 * b);
            if (val >= cod->size()) detail::parse_fail("values_file", "value at " + std::to_string(x) + " outside codomain");
            v[x] = static_cast<std::uint8_t>(val);
        }
    } else {
        const auto& vals = detail::member(j, "values", "table");
        if (!vals.is_array()) detail::parse_fail("values", "expected an array");
        if (vals.size() != dom->size())
            detail::parse_fail("values", "has " + std::to_string(vals.size()) + " entries, domain has " +
                                             std::to_string(dom->size()) + " points");
        for (std::size_t x = 0; x < vals.size(); ++x)
            v[x] = static_cast<std::uint8_t>(detail::as_uint(vals[x], "values[" + std::to_string(x) + "]", cod->size() - 1));
    }
    return FunctionTable(dom, cod, std::move(v));
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // byte offset -> line/column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path.string());
}

inline FunctionTable read_table(const std::filesystem::path& path) {
    try {
        return table_from_json(read_json_file(path), path.parent_path());
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path.string(), 0) == 0) throw;
        throw ParseError(path.string() + ": " + msg);
    }
}

/* Writes path (JSON); tables above inline_values_limit also write path + ".bin". */
inline void write_table(const std::filesystem::path& path, const FunctionTable& F, bool force_binary = false) {
    std::optional<std::filesystem::path> bin;
    if (force_binary || F.size() > inline_values_limit) bin = std::filesystem::path(path.string() + ".bin");
    const auto j = table_to_json(F, bin);
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump() << '\n';
}

/* [{"p": 3, "degree": 2, "modulus": [...]}, ...] */
inline FieldRegistry registry_from_json(const Json& j) {
    if (!j.is_array()) detail::parse_fail("moduli", "expected an array");
    std::vector<FieldDescriptor> ds;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = "moduli[" + std::to_string(i) + "]";
        detail::only_keys(j[i], {"p", "degree", "modulus"}, w);
        const auto p = static_cast<std::uint32_t>(detail::as_uint(detail::member(j[i], "p", w), w + ".p", 251));
        if (!is_prime(p)) detail::parse_fail(w + ".p", "not prime");
        Json f{{"degree", detail::member(j[i], "degree", w)}, {"modulus", detail::member(j[i], "modulus", w)}};
        ds.push_back(field_from_json(f, p, w));
    }
    return FieldRegistry(std::move(ds));
}

inline Json registry_to_json(const std::vector<FieldDescriptor>& ds) {
    Json a = Json::array();
    for (const auto& d : ds) a.push_back(Json{{"p", d.p}, {"degree", d.degree}, {"modulus", d.modulus}});
    return a;
}

enum class OutputFormat { json, text };

struct JobConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string route = "auto";
    std::uint64_t budget_enum = default_enumeration_budget;
    std::uint64_t budget_nodes = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t sample = 1000;
    unsigned threads = 0;
    std::string output;
    OutputFormat format = OutputFormat::json;
    std::string modulus_file;

    void validate() const {
        if (budget_enum == 0) throw ParseError("budget_enum must be positive");
        if (budget_nodes == 0) throw ParseError("budget_nodes must be positive");
        if (sample == 0) throw ParseError("sample must be positive");
        static const std::vector<std::string> routes{"auto", "definitional", "eq1", "eq29", "hadamard", "thm1perm"};
        if (std::find(routes.begin(), routes.end(), route) == routes.end())
            throw ParseError("unknown route '" + route + "'");
    }

    static JobConfig from_json(const Json& j) {
        detail::only_keys(j,
                          {"command", "inputs", "route", "budget_enum", "budget_nodes", "sample", "threads", "output",
                           "format", "modulus_file"},
                          "config");
        JobConfig c;
        try {
            if (j.contains("command")) c.command = j["command"].get<std::string>();
            if (j.contains("inputs")) c.inputs = j["inputs"].get<std::vector<std::string>>();
            if (j.contains("route")) c.route = j["route"].get<std::string>();
            if (j.contains("output")) c.output = j["output"].get<std::string>();
            if (j.contains("modulus_file")) c.modulus_file = j["modulus_file"].get<std::string>();
            if (j.contains("format")) {
                const auto f = j["format"].get<std::string>();
                if (f != "json" && f != "text") detail::parse_fail("config.format", "expected json or text");
                c.format = f == "json" ? OutputFormat::json : OutputFormat::text;
            }
        } catch (const Json::type_error& e) {
            detail::parse_fail("config", e.what());
        }
        if (j.contains("budget_enum")) c.budget_enum = detail::as_uint(j["budget_enum"], "config.budget_enum");
        if (j.contains("budget_nodes")) c.budget_nodes = detail::as_uint(j["budget_nodes"], "config.budget_nodes");
        if (j.contains("sample")) c.sample = detail::as_uint(j["sample"], "config.sample");
        if (j.contains("threads")) c.threads = static_cast<unsigned>(detail::as_uint(j["threads"], "config.threads", 4096));
        c.validate();
        return c;
    }
};

/* Reports */

inline Json to_json(const BentReport& r) {
    Json j{{"is_bent", r.is_bent}, {"regularity", to_string(r.regularity)}};
    j["epsilon"] = r.epsilon ? Json(*r.epsilon) : Json(nullptr);
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

inline Json analysis_report(const FunctionTable& F, const VectorialReport& vr, const std::optional<DualBentResult>& db) {
    Json comps = Json::array();
    for (Index c = 1; c < vr.components.size(); ++c) {
        Json e = to_json(vr.at(c));
        e["c"] = c;
        comps.push_back(std::move(e));
    }
    Json j{{"p", F.p()},
           {"n", F.n()},
           {"m", F.m()},
           {"is_bent", vr.vectorial_bent},
           {"vectorial_bent", vr.vectorial_bent},
           {"all_weakly_regular", vr.all_weakly_regular},
           {"components", std::move(comps)}};
    j["uniform_epsilon"] = vr.uniform_epsilon ? Json(*vr.uniform_epsilon) : Json(nullptr);
    if (db) {
        j["vectorial_dual_bent"] = db->verdict;
        if (!db->detail.empty()) j["dual_bent_detail"] = db->detail;
    }
    return j;
}

inline Json to_json(const PartitionReport& r) {
    Json j{{"route", to_string(r.route)},
           {"verdict", to_string(r.verdict)},
           {"is_bent_partition", r.is_bent_partition},
           {"depth", r.depth},
           {"functions_checked", r.functions_checked}};
    j["class_wbp"] = r.class_wbp ? Json(*r.class_wbp) : Json(nullptr);
    j["epsilon"] = r.epsilon ? Json(*r.epsilon) : Json(nullptr);
    j["depth_power_of_p"] = r.depth_power_of_p ? Json(*r.depth_power_of_p) : Json(nullptr);
    j["dual_bent"] = r.dual_bent ? Json(*r.dual_bent) : Json(nullptr);
    if (r.h) j["h_is_zero"] = r.h->is_zero();
    if (r.counterexample)
    {
        const auto& ce = *r.counterexample;
        j["counterexample"] = Json{{"assignment", ce.assignment}, {"reason", ce.reason}};
        j["counterexample"]["walsh_point"] = ce.walsh_point ? Json(*ce.walsh_point) : Json(nullptr);
    }
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline Json to_json(const Construction& c) {
    Json pre = Json::array();
    for (const auto& [name, ok] : c.preconditions) pre.push_back(Json{{"name", name}, {"verified", ok}});
    Json j{{"name", c.name},
           {"p", c.F.p()},
           {"n", c.F.n()},
           {"m", c.F.m()},
           {"points", c.F.size()},
           {"preconditions", std::move(pre)},
           {"expect_bent_partition", c.expect_bent_partition},
           {"expect_wbp", c.expect_wbp},
           {"has_witnesses", c.G.has_value() && c.h.has_value()}};
    j["epsilon"] = c.epsilon ? Json(*c.epsilon) : Json(nullptr);
    j["expect_dual_bent"] = c.expect_dual_bent ? Json(*c.expect_dual_bent) : Json(nullptr);
    if (c.h) j["h_is_zero"] = c.h->is_zero();
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

inline Json to_json(const Partition& g) { return Json(g.cells()); }

inline Json to_json(const SearchResult& r) {
    Json parts = Json::array();
    for (const auto& g : r.partitions) parts.push_back(to_json(g));
    return Json{{"found", r.partitions.size()},
                {"nodes", r.nodes},
                {"candidates_verified", r.candidates_verified},
                {"size_vectors", r.size_vectors},
                {"partitions", std::move(parts)}};
}

/* Flat "key: value" lines for --format text. */
inline void write_text(std::ostream& os, const Json& j, const std::string& prefix = {}) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            write_text(os, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    } else if (j.is_array() && !j.empty() && (j.front().is_object())) {
        for (std::size_t i = 0; i < j.size(); ++i) write_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace bentpart
