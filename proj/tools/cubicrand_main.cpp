// Command line front end: sample random cubic orders, enumerate the census,
// run the chi-square comparison between the two, and benchmark sampling.
//
// Exit codes: 0 success (and statistical pass), 1 statistical failure,
// 2 usage / configuration error.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubicrand/census.hpp"
#include "cubicrand/cubic_form.hpp"
#include "cubicrand/errors.hpp"
#include "cubicrand/sampler.hpp"
#include "cubicrand/serialize.hpp"

using namespace cubicrand;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts a decimal literal or "2^k"; always exact, "2^200000" included.
bigint parse_bound(const std::string& text) {
    if (text.size() > 2 && text[0] == '2' && text[1] == '^') {
        unsigned long k = 0;
        try {
            std::size_t used = 0;
            k = std::stoul(text.substr(2), &used);
            if (used != text.size() - 2) throw std::invalid_argument(text);
        } catch (const std::exception&) {
            throw usage_error("malformed bound '" + text + "'");
        }
        bigint t = 1;
        return mul_2exp(t, static_cast<long>(k));
    }
    bigint t;
    if (mpz_set_str(t.get_mpz_t(), text.c_str(), 10) != 0 || t <= 0)
        throw usage_error("malformed bound '" + text + "' (want a positive decimal or 2^k)");
    return t;
}

// A missing seed comes from OS entropy; either way the seed is echoed to
// stderr so any run can be reproduced.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
    std::uint64_t seed;
    if (given) {
        seed = *given;
    } else {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::fprintf(stderr, "seed: %" PRIu64 "\n", seed);
    return seed;
}

struct out_stream {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit out_stream(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw usage_error("cannot open output file '" + path + "'");
        os = &file;
    }
    std::ostream& get() { return *os; }
};

struct cli_config {
    int signature = 0;
    std::string bound_text;
    std::uint64_t count = 1;
    std::string mode = "weighted";
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    int jobs = 1;
    std::string out;
    long initial_precision = 2;
    std::vector<unsigned long> exponents{20, 200, 2000};
};

sample_mode mode_of(const cli_config& cfg) {
    return cfg.mode == "uniform" ? sample_mode::uniform : sample_mode::weighted;
}

int run_sample(const cli_config& cfg) {
    bigint bound = parse_bound(cfg.bound_text);
    sampler_params par = make_params(cfg.signature, bound);
    std::uint64_t seed = resolve_seed(cfg.seed);
    sample_options opt;
    opt.initial_precision = cfg.initial_precision;
    out_stream out(cfg.out);

    std::vector<sample_result> results =
        draw_samples(par, mode_of(cfg), seed, cfg.count, opt, cfg.jobs);
    if (cfg.format == "csv") out.get() << sample_csv_header() << "\n";
    for (const sample_result& r : results) {
        int stab = r.stab > 0 ? r.stab : stab_order(r.form);
        ring_table table = ring_table_of(r.form);
        if (cfg.format == "csv")
            out.get() << sample_to_csv(r.form, stab, table, r.attempts, r.precision) << "\n";
        else
            out.get() << sample_to_json(r.form, stab, table, r.attempts, r.precision) << "\n";
    }
    return 0;
}

int run_enumerate(const cli_config& cfg) {
    bigint bound = parse_bound(cfg.bound_text);
    std::vector<orbit_record> orbits = enumerate_orbits(cfg.signature, bound);
    out_stream out(cfg.out);
    for (const orbit_record& r : orbits) out.get() << orbit_to_json(r) << "\n";
    return 0;
}

int run_stats(const cli_config& cfg) {
    bigint bound = parse_bound(cfg.bound_text);
    if (bound > 10000)
        throw usage_error("stats needs bound <= 10000 (census-backed comparison)");
    orbit_index index(cfg.signature, bound);
    const std::vector<orbit_record>& orbits = index.orbits();
    if (cfg.count < 20 * orbits.size())
        throw usage_error("stats needs count >= 20 per census orbit (" +
                          std::to_string(orbits.size()) + " orbits, so >= " +
                          std::to_string(20 * orbits.size()) + ")");

    sampler_params par = make_params(cfg.signature, bound);
    std::uint64_t seed = resolve_seed(cfg.seed);
    sample_options opt;
    opt.initial_precision = cfg.initial_precision;
    std::vector<sample_result> results =
        draw_samples(par, mode_of(cfg), seed, cfg.count, opt, cfg.jobs);

    std::vector<long long> counts(orbits.size(), 0);
    for (const sample_result& r : results) ++counts[index.locate(r.form)];

    chisq_result chi = chisquare_from_counts(counts, expected_weights(orbits, mode_of(cfg)));
    out_stream out(cfg.out);
    out.get() << "orbits: " << orbits.size() << "\n"
              << "samples: " << cfg.count << "\n"
              << "statistic: " << chi.statistic << "\n"
              << "df: " << chi.df << "\n"
              << "p-value: " << chi.p_value << "\n";
    if (chi.degenerate) out.get() << "note: single orbit, nothing to test\n";
    return chi.p_value > 0.001 ? 0 : 1;
}

int run_bench(const cli_config& cfg) {
    std::uint64_t seed = resolve_seed(cfg.seed);
    sample_options opt;
    opt.initial_precision = cfg.initial_precision;
    out_stream out(cfg.out);
    for (unsigned long t : cfg.exponents) {
        bigint bound = parse_bound("2^" + std::to_string(t));
        double secs[2];  // r = 3, then r = 1
        int idx = 0;
        for (int r : {3, 1}) {
            sampler_params par = make_params(r, bound);
            auto begin = std::chrono::steady_clock::now();
            draw_samples(par, sample_mode::weighted, seed + t, cfg.count, opt, cfg.jobs);
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - begin;
            secs[idx++] = dt.count() / static_cast<double>(cfg.count);
        }
        char line[128];
        std::snprintf(line, sizeof line, "%lu\t%.6e\t%.6e", t, secs[0], secs[1]);
        out.get() << line << "\n";
        out.get().flush();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random cubic integral domains via binary cubic forms"};
    app.require_subcommand(1);
    cli_config cfg;

    auto add_common = [&cfg](CLI::App* cmd, bool need_signature) {
        if (need_signature)
            cmd->add_option("-r,--signature", cfg.signature, "signature, 1 or 3")
                ->required()
                ->check(CLI::IsMember({1, 3}));
        cmd->add_option("--seed", cfg.seed, "random seed (default: OS entropy)");
        cmd->add_option("--out", cfg.out, "output file (default: stdout)");
        cmd->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--initial-precision", cfg.initial_precision,
                        "first working precision in bits")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* sample = app.add_subcommand("sample", "draw random cubic orders");
    add_common(sample, true);
    sample->add_option("-T,--bound", cfg.bound_text, "discriminant bound, decimal or 2^k")
        ->required();
    sample->add_option("-n,--count", cfg.count, "number of samples");
    sample->add_option("--mode", cfg.mode, "weighted (1/#Aut) or uniform")
        ->check(CLI::IsMember({"weighted", "uniform"}));
    sample->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* enumerate = app.add_subcommand("enumerate", "census of all orbits up to the bound");
    add_common(enumerate, true);
    enumerate->add_option("-T,--bound", cfg.bound_text, "discriminant bound, decimal or 2^k")
        ->required();

    CLI::App* stats = app.add_subcommand("stats", "chi-square of samples against the census");
    add_common(stats, true);
    stats->add_option("-T,--bound", cfg.bound_text, "discriminant bound, decimal or 2^k")
        ->required();
    stats->add_option("-n,--count", cfg.count, "number of samples")->required();
    stats->add_option("--mode", cfg.mode, "weighted (1/#Aut) or uniform")
        ->check(CLI::IsMember({"weighted", "uniform"}));

    CLI::App* bench = app.add_subcommand("bench", "per-sample timing at T = 2^t");
    add_common(bench, false);
    bench->add_option("-t,--exponents", cfg.exponents, "exponents t to time (T = 2^t)");
    bench->add_option("-n,--count", cfg.count, "samples per timing point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sample->parsed()) return run_sample(cfg);
        if (enumerate->parsed()) return run_enumerate(cfg);
        if (stats->parsed()) return run_stats(cfg);
        if (bench->parsed()) return run_bench(cfg);
    } catch (const usage_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
