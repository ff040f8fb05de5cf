// patlim: bijection checks and limit-law experiments.
// Exit codes: 0 ok, 1 invariant failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "patlim/lab.hpp"

namespace {

using namespace patlim;

struct Flags {
    std::string pattern = "321";
    std::size_t n = 9;
    std::vector<std::size_t> n_list{50, 200, 1000, 5000};
    std::uint64_t count = 10000;
    std::size_t k = 2;
    std::uint32_t bucket_cap = 50;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string format = "json";
    std::string out;
    std::string records;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

Pattern pattern_flag(const Flags& f) {
    auto p = parse_pattern(f.pattern);
    if (!p) throw UsageError("unknown pattern " + f.pattern);
    return *p;
}

std::string law_csv(const PrefixLaw& law) {
    std::ostringstream out;
    for (std::size_t j = 1; j <= law.k(); ++j) out << "x" << j << ',';
    out << "count\n";
    for (const auto& [prefix, c] : law.counts()) {
        for (auto code : prefix) {
            if (code == kLarge)
                out << "LARGE,";
            else
                out << code << ',';
        }
        out << c << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + path);
    file << text;
}

// JSON output embeds the manifest; CSV output gets it as a sidecar
// PATH.manifest.json (or on stderr when writing to stdout).
void emit(const Flags& f, const nlohmann::json& manifest, const nlohmann::json& body, const std::string& csv) {
    std::string text;
    if (f.format == "csv") {
        text = csv;
        if (f.out.empty())
            std::cerr << manifest.dump() << '\n';
        else
            write_file(f.out + ".manifest.json", manifest.dump(2) + "\n");
    } else {
        nlohmann::json doc = body;
        doc["manifest"] = manifest;
        text = doc.dump(2) + "\n";
    }
    if (f.out.empty())
        std::cout << text;
    else
        write_file(f.out, text);
}

nlohmann::json common_flags(const Flags& f) {
    return {{"pattern", f.pattern}, {"count", f.count}, {"k", f.k}, {"bucket_cap", f.bucket_cap},
            {"seed", f.seed},       {"workers", f.workers}, {"format", f.format}};
}

int run_verify(const Flags& f) {
    if (f.n < 1 || f.n > static_cast<std::size_t>(kMaxVerifySize))
        throw UsageError("exhaustion bound exceeded: --n must be in 1..9");
    const VerifyReport report = verify_bijections(static_cast<int>(f.n));
    const auto manifest = make_manifest("verify", f.seed, {{"n", f.n}, {"format", f.format}});
    std::ostringstream csv;
    csv << "pattern,n,invariant,ok\n";
    for (const auto& c : report.checks)
        csv << pattern_name(c.sigma) << ',' << c.n << ',' << c.invariant << ',' << (c.ok ? "true" : "false") << '\n';
    emit(f, manifest, to_json(report), csv.str());
    if (const auto* bad = report.first_failure()) {
        std::cerr << "FAIL: " << bad->invariant << " (sigma=" << pattern_name(bad->sigma) << ", n=" << bad->n << ")\n";
        return 1;
    }
    return 0;
}

int run_sample(const Flags& f) {
    const Pattern sigma = pattern_flag(f);
    if (f.k > f.n) throw UsageError("k > n");
    const PrefixLaw law = sample_prefix_law(sigma, f.n, f.count, f.k, f.bucket_cap, {f.seed, f.workers});
    auto flags = common_flags(f);
    flags["n"] = f.n;
    emit(f, make_manifest("sample", f.seed, flags), {{"law", to_json(law)}}, law_csv(law));
    return law.check_invariants() && law.total() == f.count ? 0 : 1;
}

int run_limit(const Flags& f) {
    const Pattern sigma = pattern_flag(f);
    const PrefixLaw law = limit_prefix_law(sigma, f.count, f.k, f.bucket_cap, {f.seed, f.workers});
    auto flags = common_flags(f);
    if (!f.records.empty()) {
        flags["records"] = f.records;
        write_file(f.records, limit_records(sigma, f.count, f.k, f.seed).dump(2) + "\n");
    }
    emit(f, make_manifest("limit", f.seed, flags), {{"law", to_json(law)}}, law_csv(law));
    return law.check_invariants() && law.total() + law.errors() == f.count ? 0 : 1;
}

int run_converge(const Flags& f) {
    const Pattern sigma = pattern_flag(f);
    for (std::size_t i = 1; i < f.n_list.size(); ++i)
        if (f.n_list[i] <= f.n_list[i - 1]) throw UsageError("--n-list must be increasing");
    for (std::size_t n : f.n_list)
        if (f.k > n) throw UsageError("k > n");
    const ConvergeResult result = converge(sigma, f.n_list, f.count, f.k, f.bucket_cap, {f.seed, f.workers});
    auto flags = common_flags(f);
    flags["n_list"] = f.n_list;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows) rows.push_back(to_json(r));
    emit(f, make_manifest("converge", f.seed, flags), {{"rows", rows}, {"limit", to_json(result.limit)}},
         converge_csv(result.rows));
    return result.limit.check_invariants() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Flags f;
    CLI::App app{"Pattern-avoiding permutations from plane trees and their local limits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(PATLIM_VERSION));

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", f.seed, "64-bit seed");
        sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", f.out, "output file (default stdout)");
    };
    auto add_law = [&](CLI::App* sub) {
        sub->add_option("--pattern", f.pattern, "one of 123,132,213,231,312,321")
            ->check(CLI::IsMember({"123", "132", "213", "231", "312", "321"}));
        sub->add_option("--count", f.count, "number of samples")->check(CLI::PositiveNumber);
        sub->add_option("--k", f.k, "window length")->check(CLI::PositiveNumber);
        sub->add_option("--bucket-cap", f.bucket_cap, "values above this share the LARGE bucket")
            ->check(CLI::PositiveNumber);
        sub->add_option("--workers", f.workers, "threads (0 = all cores)");
    };

    auto* verify = app.add_subcommand("verify", "exhaustive bijection checks for n = 1..N");
    verify->add_option("--n", f.n, "largest permutation length (≤ 9)");
    add_common(verify);

    auto* sample = app.add_subcommand("sample", "law of the first k values of a uniform Av_n(σ) permutation");
    sample->add_option("--n", f.n, "permutation length")->required()->check(CLI::PositiveNumber);
    add_law(sample);
    add_common(sample);

    auto* limit = app.add_subcommand("limit", "law of the first k values of the limit map on the size-biased tree");
    add_law(limit);
    add_common(limit);
    limit->add_option("--records", f.records, "also write per-tree prefix records to this JSON file");

    auto* conv = app.add_subcommand("converge", "TV distance between sample and limit laws along --n-list");
    conv->add_option("--n-list", f.n_list, "increasing sizes")->delimiter(',');
    add_law(conv);
    add_common(conv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) return run_verify(f);
        if (*sample) return run_sample(f);
        if (*limit) return run_limit(f);
        return run_converge(f);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 1;
    }
}
