#include "twistbetti/io.hpp"

#include "twistbetti/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace twistbetti {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

std::string as_rational_string(const Json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    throw ParseError(where + ": expected a rational string");
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

std::size_t as_size(const Json& v, const std::string& where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ParseError(where + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

Json strings(const QVector& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

RawArrangement parse_arrangement_json(const std::string& text) {
    const Json doc = parse_json(text);
    RawArrangement raw;
    raw.dim = as_size(member(doc, "dim", "arrangement"), "arrangement.dim");
    const Json& rows = member(doc, "hyperplanes", "arrangement");
    if (!rows.is_array()) throw ParseError("arrangement.hyperplanes: expected an array");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Json& row = rows[i];
        const std::string where = "hyperplane " + std::to_string(i + 1);
        RawHyperplane h;
        if (row.contains("label")) {
            if (!row.at("label").is_string()) throw ParseError(where + ": label must be a string");
            h.label = row.at("label").get<std::string>();
        }
        const Json& normal = member(row, "normal", where);
        if (!normal.is_array()) throw ParseError(where + ": normal must be an array");
        for (std::size_t j = 0; j < normal.size(); ++j)
            h.normal.push_back(as_rational_string(normal[j], where + " normal[" + std::to_string(j) + "]"));
        h.offset = row.contains("offset") ? as_rational_string(row.at("offset"), where + " offset") : "0";
        raw.hyperplanes.push_back(std::move(h));
    }
    return raw;
}

Arrangement load_arrangement(const std::string& path) {
    try {
        return validate_arrangement(parse_arrangement_json(read_text_file(path)));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::string arrangement_to_json(const Arrangement& a) {
    Json doc;
    doc["dim"] = a.dim();
    Json rows = Json::array();
    for (const auto& h : a.hyperplanes()) {
        Json row;
        row["label"] = h.label;
        row["normal"] = strings(h.normal);
        row["offset"] = to_string(h.offset);
        rows.push_back(std::move(row));
    }
    doc["hyperplanes"] = std::move(rows);
    return doc.dump(2) + "\n";
}

LocalSystem parse_local_system_json(const std::string& text) {
    const Json doc = parse_json(text);
    const Json& field = member(doc, "field", "local system");
    const Json& kind = member(field, "kind", "local system field");
    FieldSpec f;
    if (kind == "Q") {
        f = FieldSpec::rationals();
    } else if (kind == "Fp") {
        f = FieldSpec::prime(as_size(member(field, "p", "local system field"), "field.p"));
    } else {
        throw ParseError("local system field: kind must be \"Q\" or \"Fp\"");
    }
    const std::size_t r = as_size(member(doc, "rank", "local system"), "local system rank");
    if (r == 0) throw ValidationError("local system rank must be positive");
    const Json& mats = member(doc, "monodromy", "local system");
    if (!mats.is_array()) throw ParseError("local system monodromy: expected an array");
    std::vector<FMatrix> ms;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const std::string where = "monodromy of H" + std::to_string(i + 1);
        // Row-major flat list, or a list of rows.
        std::vector<Rational> data;
        auto take = [&](const Json& v, std::size_t k) {
            try {
                data.push_back(parse_rational(as_rational_string(v, where)));
            } catch (const ParseError& e) {
                throw ParseError(where + " entry " + std::to_string(k) + ": " + e.what());
            }
        };
        const Json& m = mats[i];
        if (!m.is_array()) throw ParseError(where + ": expected an array");
        for (const auto& v : m) {
            if (v.is_array())
                for (const auto& w : v) take(w, data.size());
            else
                take(v, data.size());
        }
        if (data.size() != r * r)
            throw ValidationError(where + ": expected " + std::to_string(r * r) + " entries, got " +
                                  std::to_string(data.size()));
        ms.emplace_back(r, std::move(data));
    }
    return build_local_system(f, r, std::move(ms));
}

LocalSystem load_local_system(const std::string& path) {
    try {
        return parse_local_system_json(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::string local_system_to_json(const LocalSystem& l) {
    Json doc;
    Json field;
    if (l.field().is_prime_field()) {
        field["kind"] = "Fp";
        field["p"] = l.field().p;
    } else {
        field["kind"] = "Q";
    }
    doc["field"] = std::move(field);
    doc["rank"] = l.rank();
    Json mats = Json::array();
    for (const auto& m : l.monodromy()) mats.push_back(strings(m.data()));
    doc["monodromy"] = std::move(mats);
    return doc.dump(2) + "\n";
}

bool is_local_system_json(const std::string& text) {
    const Json doc = parse_json(text);
    return doc.is_object() && doc.contains("monodromy");
}

std::string report_to_json(const SuiteResult& result) {
    Json reports = Json::array();
    for (const auto& r : result.reports) {
        Json j;
        j["check"] = r.check;
        j["arrangement"] = r.arrangement_id;
        j["system"] = r.system_id;
        j["variant"] = r.variant;
        j["status"] = to_string(r.status);
        j["twisted"] = r.twisted;
        Json dims = Json::object();
        for (const auto& [name, v] : r.dims) dims[name] = v;
        j["dims"] = std::move(dims);
        j["statement"] = r.statement;
        if (!r.detail.empty()) j["detail"] = r.detail;
        j["seed"] = r.seed;
        reports.push_back(std::move(j));
    }
    Json summary;
    summary["total"] = result.summary.total;
    summary["passed"] = result.summary.passed;
    summary["failed"] = result.summary.failed;
    summary["not_applicable"] = result.summary.not_applicable;
    summary["seed"] = result.summary.seed;
    // One report per line keeps large reports diffable.
    std::string out = "{\"reports\": [\n";
    for (std::size_t i = 0; i < reports.size(); ++i) out += "  " + reports[i].dump() + (i + 1 < reports.size() ? ",\n" : "\n");
    out += "],\n\"summary\": " + summary.dump() + "}\n";
    return out;
}

} // namespace twistbetti
