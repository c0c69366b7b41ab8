#pragma once

// Range sweeps over b with a certificate file.
//
// Workers pull b values from a shared index and send finished batches to the
// calling thread, which owns the file and writes each b's certificates in
// ascending b order as one flushed block. A killed run therefore leaves whole
// blocks followed by at most one partial line; resume drops the partial tail
// and any b whose block is short, then continues.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pexp/certificate.hpp"
#include "pexp/sieve.hpp"
#include "pexp/survivor.hpp"

namespace pexp {

/// Primes in [lo, hi) by a segmented sieve of Eratosthenes.
inline std::vector<u64> primes_in_range(u64 lo, u64 hi, u64 segment = 1 << 16)
{
    std::vector<u64> out;
    if (hi <= 2 || lo >= hi)
        return out;
    lo = std::max<u64>(lo, 2);
    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
    std::vector<u64> base;
    {
        std::vector<bool> composite(root + 1, false);
        for (u64 i = 2; i <= root; ++i) {
            if (composite[i])
                continue;
            base.push_back(i);
            for (u64 j = i * i; j <= root; j += i)
                composite[j] = true;
        }
    }
    std::vector<bool> composite(segment);
    for (u64 start = lo; start < hi; start += segment) {
        const u64 end = std::min(hi, start + segment);
        std::fill(composite.begin(), composite.end(), false);
        for (u64 p : base) {
            if (p * p >= end)
                break;
            u64 first = std::max(p * p, (start + p - 1) / p * p);
            for (u64 j = first; j < end; j += p)
                composite[j - start] = true;
        }
        for (u64 n = start; n < end; ++n)
            if (!composite[n - start])
                out.push_back(n);
    }
    return out;
}

/// Primes b == 1 mod 12 in [b_min, b_max).
inline std::vector<u64> sweep_targets(u64 b_min, u64 b_max)
{
    std::vector<u64> out;
    for (u64 p : primes_in_range(b_min, b_max))
        if (p % 12 == 1)
            out.push_back(p);
    return out;
}

struct SweepConfig {
    u64 b_min = 13;
    u64 b_max = 1000;
    u64 max_modulus = 241;
    u64 budget = 14;
    unsigned jobs = 1;
    std::filesystem::path out_path = "certificates.jsonl";
    bool resume = false;
    // exponent range searched when explaining survivors
    u64 exponent_bound = 64;
    std::size_t candidate_cap = 1'000'000;

    void validate() const
    {
        if (b_min >= b_max)
            throw std::invalid_argument("b_min must be below b_max");
        if (jobs < 1)
            throw std::invalid_argument("jobs must be at least 1");
        if (budget < 1)
            throw std::invalid_argument("budget must be at least 1");
        if (max_modulus < 5)
            throw std::invalid_argument("max modulus must be at least 5");
        if (candidate_cap < 1)
            throw std::invalid_argument("candidate cap must be at least 1");
    }
};

struct SurvivorNote {
    EliminationCertificate certificate;
    std::optional<std::string> identity;
};

struct SweepSummary {
    u64 b_count = 0;
    u64 b_resumed = 0;
    u64 certificates = 0;
    u64 eliminated = 0;
    u64 survived = 0;
    u64 max_moduli_used = 0;
    u64 max_modulus = 0;
    std::vector<SurvivorNote> survivors;

    void add(const EliminationCertificate& c)
    {
        ++certificates;
        if (c.outcome == Outcome::Eliminated)
            ++eliminated;
        else
            ++survived;
        max_moduli_used = std::max(max_moduli_used, c.moduli_used);
        for (const auto& s : c.steps)
            max_modulus = std::max(max_modulus, s.modulus);
    }
};

namespace detail {

struct BatchResult {
    std::size_t index = 0;
    std::string text;
    std::vector<EliminationCertificate> certificates;
    std::vector<SurvivorNote> survivors;
    std::exception_ptr error;
};

template <typename T>
class Channel {
public:
    void push(T v)
    {
        {
            std::lock_guard lock(mutex_);
            queue_.push_back(std::move(v));
        }
        cv_.notify_one();
    }

    T pop()
    {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return !queue_.empty(); });
        T v = std::move(queue_.front());
        queue_.pop_front();
        return v;
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<T> queue_;
};

inline BatchResult process_b(std::size_t index, u64 b, std::span<const u64> plan, const SieveOptions& opt,
                             u64 exponent_bound)
{
    BatchResult r;
    r.index = index;
    for (auto& run : eliminate_b_runs(b, plan, opt)) {
        const auto& cert = run.certificate;
        r.text += to_line(cert);
        r.text += '\n';
        if (cert.outcome == Outcome::Survived) {
            SurvivorNote note{cert, std::nullopt};
            if (auto id = find_exponent_zero_identity(b, cert.split, *cert.z2, run.survivors, exponent_bound))
                note.identity = describe(*id, b, *cert.z2);
            r.survivors.push_back(std::move(note));
        }
        r.certificates.push_back(cert);
    }
    return r;
}

/// Reads an existing certificate file and keeps complete per-b blocks.
/// Returns the retained lines (in file order) and the set of finished b.
inline std::pair<std::vector<std::string>, std::set<u64>> load_resumable(const std::filesystem::path& path,
                                                                         std::ostream* log)
{
    std::vector<std::string> kept;
    std::set<u64> done;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return {kept, done};
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!content.empty() && content.back() != '\n') {
        const auto cut = content.find_last_of('\n');
        content.erase(cut == std::string::npos ? 0 : cut + 1);
        if (log)
            *log << "resume: dropped partial trailing line\n";
    }
    std::map<u64, std::vector<std::string>> by_b;
    std::vector<u64> order;
    std::istringstream lines(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.empty())
            continue;
        try {
            const auto c = parse_line(line);
            if (!by_b.count(c.b))
                order.push_back(c.b);
            by_b[c.b].push_back(line);
        } catch (const CertificateParseError& e) {
            if (log)
                *log << "resume: ignoring malformed line " << line_no << ": " << e.what() << "\n";
        }
    }
    for (u64 b : order) {
        auto& group = by_b[b];
        std::size_t expected = 0;
        try {
            expected = expected_certificate_count(b);
        } catch (const std::invalid_argument&) {
            expected = 0;
        }
        const std::set<std::string> distinct(group.begin(), group.end());
        if (expected != 0 && distinct.size() == expected && group.size() == expected) {
            kept.insert(kept.end(), group.begin(), group.end());
            done.insert(b);
        } else if (log) {
            *log << "resume: recomputing b=" << b << " (" << group.size() << " of " << expected
                 << " certificates present)\n";
        }
    }
    return {kept, done};
}

} // namespace detail

/// Runs the sweep described by cfg; throws std::runtime_error on I/O failure.
inline SweepSummary run_sweep(const SweepConfig& cfg, std::ostream* log = nullptr)
{
    cfg.validate();
    const auto plan = default_plan(cfg.max_modulus);
    SieveOptions opt;
    opt.budget = cfg.budget;
    opt.candidate_cap = cfg.candidate_cap;

    SweepSummary summary;
    std::set<u64> done;
    if (cfg.resume && std::filesystem::exists(cfg.out_path)) {
        auto [kept, finished] = detail::load_resumable(cfg.out_path, log);
        const auto tmp = std::filesystem::path(cfg.out_path.string() + ".tmp");
        {
            std::ofstream rewrite(tmp, std::ios::binary | std::ios::trunc);
            if (!rewrite)
                throw std::runtime_error("cannot write " + tmp.string());
            for (const auto& l : kept) {
                rewrite << l << '\n';
                summary.add(parse_line(l));
            }
            if (!rewrite.flush())
                throw std::runtime_error("write failed for " + tmp.string());
        }
        std::filesystem::rename(tmp, cfg.out_path);
        done = std::move(finished);
        for (const auto& l : kept) {
            auto c = parse_line(l);
            if (c.outcome == Outcome::Survived)
                summary.survivors.push_back({c, std::nullopt});
        }
    }

    std::vector<u64> todo;
    for (u64 b : sweep_targets(cfg.b_min, cfg.b_max)) {
        if (done.count(b)) {
            ++summary.b_resumed;
            continue;
        }
        todo.push_back(b);
    }
    summary.b_count = summary.b_resumed + todo.size();

    std::ofstream out(cfg.out_path, std::ios::binary | (cfg.resume ? std::ios::app : std::ios::trunc));
    if (!out)
        throw std::runtime_error("cannot open " + cfg.out_path.string() + " for writing");

    detail::Channel<detail::BatchResult> channel;
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    const unsigned n_workers = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(todo.size())));
    if (!todo.empty()) {
        for (unsigned w = 0; w < n_workers; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < todo.size(); i = next++) {
                    try {
                        channel.push(detail::process_b(i, todo[i], plan, opt, cfg.exponent_bound));
                    } catch (...) {
                        detail::BatchResult r;
                        r.index = i;
                        r.error = std::current_exception();
                        channel.push(std::move(r));
                    }
                }
            });
        }
    }

    std::map<std::size_t, detail::BatchResult> pending;
    std::exception_ptr failure;
    for (std::size_t emitted = 0, received = 0; received < todo.size();) {
        auto r = channel.pop();
        ++received;
        pending.emplace(r.index, std::move(r));
        while (!pending.empty() && pending.begin()->first == emitted) {
            auto node = pending.extract(pending.begin());
            auto& batch = node.mapped();
            ++emitted;
            if (failure)
                continue;
            if (batch.error) {
                failure = batch.error;
                continue;
            }
            out << batch.text;
            out.flush();
            if (!out) {
                failure = std::make_exception_ptr(std::runtime_error("write failed for " + cfg.out_path.string()));
                continue;
            }
            for (const auto& c : batch.certificates)
                summary.add(c);
            for (auto& s : batch.survivors)
                summary.survivors.push_back(std::move(s));
        }
    }
    workers.clear();
    if (failure)
        std::rethrow_exception(failure);
    std::sort(summary.survivors.begin(), summary.survivors.end(), [](const auto& l, const auto& r) {
        return std::make_tuple(l.certificate.b, l.certificate.split.b_res24(), l.certificate.split.c_res24(),
                               l.certificate.z2) <
               std::make_tuple(r.certificate.b, r.certificate.split.b_res24(), r.certificate.split.c_res24(),
                               r.certificate.z2);
    });
    return summary;
}

} // namespace pexp
