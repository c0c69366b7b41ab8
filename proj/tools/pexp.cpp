// pexp: sweeps, verification and reports for a^x + b^y = c^z over primes.
//
// Exit status: 0 clean, 1 survivor or mismatch, 2 usage or I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pexp/classnum.hpp"
#include "pexp/report.hpp"
#include "pexp/sweep.hpp"
#include "pexp/verify.hpp"

namespace {

constexpr int kClean = 0;
constexpr int kFound = 1;
constexpr int kUsage = 2;

int cmd_sweep(const pexp::SweepConfig& cfg)
{
    const auto s = pexp::run_sweep(cfg, &std::cerr);
    std::cout << "b values: " << s.b_count << " (" << s.b_resumed << " resumed)\n"
              << "certificates: " << s.certificates << "\n"
              << "eliminated: " << s.eliminated << "\n"
              << "survivors: " << s.survived << "\n"
              << "max moduli used: " << s.max_moduli_used << "\n"
              << "max modulus touched: " << s.max_modulus << "\n";
    for (const auto& n : s.survivors) {
        const auto& c = n.certificate;
        std::cout << "SURVIVOR b=" << c.b << " case=" << c.split.label() << " z2=" << *c.z2
                  << " moduli_used=" << c.moduli_used;
        if (n.identity)
            std::cout << " exponent-zero identity: " << *n.identity;
        std::cout << "\n";
    }
    return s.survived == 0 ? kClean : kFound;
}

int cmd_verify(pexp::u64 bound)
{
    if (bound < 16) {
        std::cerr << "verify: --exponent-bound must be at least 16\n";
        return kUsage;
    }
    const auto r = pexp::run_verify(bound);
    pexp::print_verify(r, std::cout);
    return r.ok() ? kClean : kFound;
}

int cmd_classnum(pexp::u64 b)
{
    if (b % 2 == 0 || !pexp::is_prime(b) || b % 4 != 1) {
        std::cerr << "classnum: b must be a prime congruent to 1 mod 4, got " << b << "\n";
        return kUsage;
    }
    const pexp::Discriminant d(-4 * static_cast<pexp::i64>(b));
    const auto h_forms = pexp::class_number_forms(d);
    const auto h_analytic = pexp::class_number_analytic(d);
    std::cout << "discriminant: " << d.value() << "\n"
              << "h (reduced forms): " << h_forms << "\n"
              << "h (character sum): " << h_analytic << "\n"
              << "z2 candidates:";
    const auto z2 = pexp::z2_candidates(b);
    if (z2.empty())
        std::cout << " none";
    for (auto v : z2)
        std::cout << " " << v;
    std::cout << "\n";
    return h_forms == h_analytic ? kClean : kFound;
}

int cmd_report(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        std::cerr << "report: cannot read " << path << "\n";
        return kUsage;
    }
    const auto r = pexp::summarize_certificates(in);
    pexp::print_report(r, std::cout);
    return r.survived == 0 ? kClean : kFound;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Search and elimination tools for a^x + b^y = c^z over prime triples"};
    app.set_config("--config", "", "TOML/INI file with option defaults (flags override it)");
    app.require_subcommand(1);

    pexp::SweepConfig cfg;
    std::string out_path = cfg.out_path.string();
    auto* sweep = app.add_subcommand("sweep", "Sieve every prime b == 1 mod 12 in [b-min, b-max)");
    sweep->add_option("--b-min", cfg.b_min, "Smallest b (inclusive)")->capture_default_str();
    sweep->add_option("--b-max", cfg.b_max, "Largest b (exclusive)")->capture_default_str();
    sweep->add_option("--max-prime", cfg.max_modulus, "Largest sieve modulus")->capture_default_str();
    sweep->add_option("--budget", cfg.budget, "Sieve moduli applied per (b, case, z2)")->capture_default_str();
    sweep->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
    sweep->add_option("--out", out_path, "Certificate file")->capture_default_str();
    sweep->add_flag("--resume", cfg.resume, "Keep complete records in --out and continue");
    sweep->add_option("--exponent-bound", cfg.exponent_bound, "Exponent range for survivor diagnostics")
        ->capture_default_str();
    sweep->add_option("--candidate-cap", cfg.candidate_cap, "Largest candidate set kept in memory")
        ->capture_default_str();

    pexp::u64 verify_bound = 64;
    auto* verify = app.add_subcommand("verify", "Re-derive the exception tables and power-difference facts");
    verify->add_option("--exponent-bound", verify_bound, "Largest exponent enumerated")->capture_default_str();

    pexp::u64 class_b = 0;
    auto* classnum = app.add_subcommand("classnum", "Class number of Q(sqrt(-b)) and admissible z2");
    classnum->add_option("b", class_b, "Prime b == 1 mod 4")->required();

    std::string report_path;
    auto* report = app.add_subcommand("report", "Summarise a certificate file");
    report->add_option("path", report_path, "Certificate file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*sweep) {
            cfg.out_path = out_path;
            return cmd_sweep(cfg);
        }
        if (*verify)
            return cmd_verify(verify_bound);
        if (*classnum)
            return cmd_classnum(class_b);
        if (*report)
            return cmd_report(report_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
