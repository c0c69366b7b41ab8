#pragma once

// Aggregate statistics over a certificate file.

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "pexp/certificate.hpp"

namespace pexp {

struct CertificateReport {
    u64 lines = 0;
    u64 certificates = 0;
    u64 eliminated = 0;
    u64 survived = 0;
    u64 no_admissible_z2 = 0;
    u64 max_modulus = 0;
    std::set<u64> distinct_b;
    std::map<u64, u64> moduli_used_histogram;
    std::vector<EliminationCertificate> survivors;
    std::vector<std::pair<u64, std::string>> errors; // (line number, message)
};

inline CertificateReport summarize_certificates(std::istream& in)
{
    CertificateReport r;
    std::string line;
    while (std::getline(in, line)) {
        ++r.lines;
        if (line.empty())
            continue;
        EliminationCertificate c;
        try {
            c = parse_line(line);
        } catch (const CertificateParseError& e) {
            r.errors.emplace_back(r.lines, e.what());
            continue;
        }
        ++r.certificates;
        r.distinct_b.insert(c.b);
        if (!c.z2)
            ++r.no_admissible_z2;
        if (c.outcome == Outcome::Eliminated) {
            ++r.eliminated;
        } else {
            ++r.survived;
            r.survivors.push_back(c);
        }
        ++r.moduli_used_histogram[c.moduli_used];
        for (const auto& s : c.steps)
            r.max_modulus = std::max(r.max_modulus, s.modulus);
    }
    return r;
}

inline void print_report(const CertificateReport& r, std::ostream& os)
{
    os << "certificates: " << r.certificates << " (b values: " << r.distinct_b.size() << ")\n";
    os << "eliminated: " << r.eliminated << " (no admissible z2: " << r.no_admissible_z2 << ")\n";
    os << "survivors: " << r.survived << "\n";
    os << "max modulus: " << r.max_modulus << "\n";
    os << "moduli used histogram:\n";
    for (auto [k, n] : r.moduli_used_histogram)
        os << "  " << k << ": " << n << "\n";
    for (const auto& c : r.survivors)
        os << "SURVIVOR b=" << c.b << " case=" << c.split.label() << " z2=" << *c.z2 << "\n";
    for (const auto& [line, msg] : r.errors)
        os << "malformed line " << line << ": " << msg << "\n";
}

} // namespace pexp
