// rci: ring class invariants from the command line.
//
//   rci check     --dk D --n N
//   rci classpoly --dk D --n N [--kind delta-quotient|j]
//   rci verify    [--suite siegel|norm|pinned|all] [--n-max M]
//   rci eval      --dk D --n N [--digits K]
//
// Exit codes: 0 ok, 1 bad input, 2 conditions fail (check), 3 no convergence,
// 4 unsupported field, 5 verification failure.

#include <clocale>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rci/commands.hpp"

namespace {

unsigned parse_parallelism(const std::string& s)
{
    if (s == "auto")
        return 0;
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos == s.size() && v >= 1)
            return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw rci::config_error("--parallelism expects a positive integer or 'auto'");
}

}  // namespace

int main(int argc, char** argv)
{
    std::setlocale(LC_ALL, "C");

    CLI::App app{"ring class invariants of imaginary quadratic orders"};
    app.set_version_flag("--version", rci::kVersion);
    app.require_subcommand(1);

    std::int64_t dk = 0, n = 0, n_max = 12;
    long prec = 128;
    int digits = 30, max_retries = 5, tol_log2 = -32;
    bool json = false, force = false;
    std::string kind = "delta-quotient", suite = "all", parallelism = "auto";
    std::string cache_path, beta_table;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--prec", prec, "working precision in bits (>= 64)")->capture_default_str();
        sub->add_option("--max-retries", max_retries, "precision doublings before giving up")
            ->capture_default_str();
        sub->add_option("--tolerance-log2", tol_log2, "rounding tolerance exponent")->capture_default_str();
        sub->add_flag("--json", json, "JSON output");
        sub->add_option("--cache", cache_path, "result cache file (default: $RCI_CACHE)");
        sub->add_option("--beta-table", beta_table, "Galois data table for class number > 1");
        sub->add_option("--parallelism", parallelism, "worker threads or 'auto'")->capture_default_str();
    };

    auto* check = app.add_subcommand("check", "applicability conditions, degrees and epsilon values");
    check->add_option("--dk", dk, "fundamental discriminant, or squarefree m for Q(sqrt(-m))")->required();
    check->add_option("--n", n, "conductor")->required();
    common(check);

    auto* classpoly = app.add_subcommand("classpoly", "exact class polynomial of the invariant");
    classpoly->add_option("--dk", dk, "fundamental discriminant, or squarefree m for Q(sqrt(-m))")->required();
    classpoly->add_option("--n", n, "conductor")->required();
    classpoly->add_option("--kind", kind, "delta-quotient or j")
        ->check(CLI::IsMember({"delta-quotient", "j"}))
        ->capture_default_str();
    classpoly->add_flag("--force", force, "ignore cached results");
    common(classpoly);

    std::optional<std::int64_t> v_dk, v_n;
    auto* verify = app.add_subcommand("verify", "numerical identity checks and pinned polynomials");
    verify->add_option("--suite", suite, "siegel, norm, pinned or all")->capture_default_str();
    verify->add_option("--n-max", n_max, "largest N for the siegel suite")->capture_default_str();
    verify->add_option("--dk", v_dk, "discriminant for the norm suite");
    verify->add_option("--n", v_n, "conductor for the norm suite");
    common(verify);

    auto* eval = app.add_subcommand("eval", "decimal value of the invariant at theta");
    eval->add_option("--dk", dk, "fundamental discriminant, or squarefree m for Q(sqrt(-m))")->required();
    eval->add_option("--n", n, "conductor")->required();
    eval->add_option("--kind", kind, "delta-quotient or j")
        ->check(CLI::IsMember({"delta-quotient", "j"}))
        ->capture_default_str();
    eval->add_option("--digits", digits, "significant decimal digits")->capture_default_str();
    common(eval);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? rci::kExitOk : rci::kExitBadInput;
    }

    rci::RunConfig cfg;
    try {
        cfg.precision_bits = static_cast<rci::Precision>(prec);
        cfg.max_retries = max_retries;
        cfg.tolerance_log2 = tol_log2;
        cfg.output_format = json ? rci::OutputFormat::Json : rci::OutputFormat::Text;
        if (!cache_path.empty())
            cfg.cache_path = cache_path;
        if (!beta_table.empty())
            cfg.beta_table_path = beta_table;
        cfg.parallelism = parse_parallelism(parallelism);
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rci::kExitBadInput;
    }

    if (check->parsed())
        return rci::cmd_check(dk, n, cfg, std::cout, std::cerr);
    if (classpoly->parsed())
        return rci::cmd_classpoly(dk, n, rci::parse_kind(kind), cfg, force, std::cout, std::cerr);
    if (verify->parsed())
        return rci::cmd_verify({suite, n_max, v_dk, v_n}, cfg, std::cout, std::cerr);
    return rci::cmd_eval(dk, n, rci::parse_kind(kind), digits, cfg, std::cout, std::cerr);
}
