#pragma once

// Line format for elimination certificates: one JSON object per line with the
// fields, in this order,
//
//   {"b":61,"case":[13,5],"z2":3,"steps":[[5,12],[7,3]],"outcome":"survived","moduli_used":2}
//
// z2 is null for the "no admissible z2" marker.

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "pexp/sieve.hpp"

namespace pexp {

inline std::string to_string(Outcome o)
{
    return o == Outcome::Eliminated ? "eliminated" : "survived";
}

inline std::string to_line(const EliminationCertificate& c)
{
    nlohmann::ordered_json j;
    j["b"] = c.b;
    j["case"] = {c.split.b_res24(), c.split.c_res24()};
    if (c.z2)
        j["z2"] = *c.z2;
    else
        j["z2"] = nullptr;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : c.steps)
        j["steps"].push_back({s.modulus, s.surviving});
    j["outcome"] = to_string(c.outcome);
    j["moduli_used"] = c.moduli_used;
    return j.dump();
}

class CertificateParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses one line; throws CertificateParseError on anything malformed.
inline EliminationCertificate parse_line(const std::string& line)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw CertificateParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!j.is_object() || j.size() != 6)
            throw CertificateParseError("expected an object with 6 fields");
        EliminationCertificate c;
        c.b = j.at("b").get<u64>();
        const auto& cs = j.at("case");
        if (!cs.is_array() || cs.size() != 2)
            throw CertificateParseError("case must be a pair");
        c.split = CaseSplit::make(cs[0].get<unsigned>(), cs[1].get<unsigned>());
        if (!j.at("z2").is_null())
            c.z2 = j.at("z2").get<u64>();
        for (const auto& s : j.at("steps")) {
            if (!s.is_array() || s.size() != 2)
                throw CertificateParseError("steps entries must be [modulus, surviving]");
            c.steps.push_back({s[0].get<u64>(), s[1].get<u64>()});
        }
        const auto outcome = j.at("outcome").get<std::string>();
        if (outcome == "eliminated")
            c.outcome = Outcome::Eliminated;
        else if (outcome == "survived")
            c.outcome = Outcome::Survived;
        else
            throw CertificateParseError("unknown outcome '" + outcome + "'");
        c.moduli_used = j.at("moduli_used").get<u64>();
        if (c.moduli_used != c.steps.size())
            throw CertificateParseError("moduli_used disagrees with steps");
        const bool emptied = !c.steps.empty() && c.steps.back().surviving == 0;
        if ((c.outcome == Outcome::Eliminated) != (emptied || !c.z2))
            throw CertificateParseError("outcome inconsistent with steps");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw CertificateParseError(std::string("bad field: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw CertificateParseError(e.what());
    }
}

} // namespace pexp
