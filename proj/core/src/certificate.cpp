#include "recforge/certificate.hpp"

#include <json.hpp>

namespace recforge {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> to_strings(const std::vector<Int>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

bool parse_ints(const ordered_json& j, std::vector<Int>* out) {
    if (!j.is_array()) return false;
    out->clear();
    for (const auto& e : j) {
        if (!e.is_string()) return false;
        try {
            out->push_back(Int(e.get<std::string>()));
        } catch (...) {
            return false;
        }
    }
    return true;
}

}  // namespace

Certificate make_certificate(const IterateResult& r,
                             const std::string& e_spec) {
    Certificate c;
    for (long long s : r.S) c.S.push_back(s);
    c.delta = r.witness.delta;
    c.K = r.rounds_completed;
    c.requested_K = r.requested_K;
    c.degraded = r.degraded;
    c.degradation_reason = r.degradation_reason;
    c.e_spec = e_spec;
    c.kneser_n = r.evidence.kneser_n;
    c.kneser_r = r.evidence.kneser_r;
    c.chi_lower = r.evidence.chi_lower;
    c.vertex_integers = r.evidence.vertex_integers;
    for (long long b : r.witness.B) c.B.push_back(b);
    c.m = r.witness.m;
    for (long long s : r.witness.S) c.witness_S.push_back(s);
    c.witness_delta = r.witness.delta;
    c.construction_log = r.log;
    return c;
}

std::string certificate_to_json(const Certificate& c) {
    ordered_json j;  // keys emitted in insertion order: keep them sorted
    j["B"] = to_strings(c.B);
    j["K"] = c.K;
    j["S"] = to_strings(c.S);
    j["chi_lower_bound"] = c.chi_lower;
    j["construction_log"] = c.construction_log;
    j["degradation_reason"] = c.degradation_reason;
    j["degraded"] = c.degraded;
    j["delta"] = to_string(c.delta);
    j["e_spec"] = c.e_spec;
    j["kneser_n"] = c.kneser_n;
    j["kneser_r"] = c.kneser_r;
    j["m"] = to_string(c.m);
    j["requested_K"] = c.requested_K;
    j["schema_version"] = c.schema_version;
    j["vertex_integers"] = to_strings(c.vertex_integers);
    j["witness_S"] = to_strings(c.witness_S);
    j["witness_delta"] = to_string(c.witness_delta);
    return j.dump(2);
}

std::optional<Certificate> certificate_from_json(const std::string& text,
                                                 std::string* error) {
    auto fail = [&](const std::string& why) -> std::optional<Certificate> {
        if (error) *error = why;
        return std::nullopt;
    };
    ordered_json doc = ordered_json::parse(text, nullptr, false);
    if (doc.is_discarded()) return fail("malformed JSON");
    if (doc.contains("certificate")) doc = doc["certificate"];
    if (!doc.is_object()) return fail("certificate is not an object");
    Certificate c;
    try {
        c.schema_version = doc.at("schema_version").get<std::string>();
        if (c.schema_version != "1")
            return fail("unsupported schema_version " + c.schema_version);
        if (!parse_ints(doc.at("S"), &c.S)) return fail("bad field S");
        if (!parse_ints(doc.at("B"), &c.B)) return fail("bad field B");
        if (!parse_ints(doc.at("witness_S"), &c.witness_S))
            return fail("bad field witness_S");
        if (!parse_ints(doc.at("vertex_integers"), &c.vertex_integers))
            return fail("bad field vertex_integers");
        auto d = parse_rational(doc.at("delta").get<std::string>());
        auto wd = parse_rational(doc.at("witness_delta").get<std::string>());
        if (!d || !wd) return fail("bad rational field");
        c.delta = *d;
        c.witness_delta = *wd;
        c.m = Int(doc.at("m").get<std::string>());
        c.K = doc.at("K").get<int>();
        c.requested_K = doc.at("requested_K").get<int>();
        c.degraded = doc.at("degraded").get<bool>();
        c.degradation_reason =
            doc.at("degradation_reason").get<std::string>();
        c.e_spec = doc.at("e_spec").get<std::string>();
        c.kneser_n = doc.at("kneser_n").get<int>();
        c.kneser_r = doc.at("kneser_r").get<int>();
        c.chi_lower = doc.at("chi_lower_bound").get<int>();
        for (const auto& line : doc.at("construction_log"))
            c.construction_log.push_back(line.get<std::string>());
    } catch (const std::exception& e) {
        return fail(std::string("missing or mistyped field: ") + e.what());
    }
    return c;
}

}  // namespace recforge
