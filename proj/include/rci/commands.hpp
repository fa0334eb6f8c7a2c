#pragma once

// Command implementations behind the rci tool.  Each writes to the given
// streams and returns the process exit code.

#include <cmath>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rci/classpoly.hpp"
#include "rci/conditions.hpp"
#include "rci/errors.hpp"
#include "rci/io.hpp"
#include "rci/modeval.hpp"

namespace rci {

enum ExitCode : int {
    kExitOk = 0,
    kExitBadInput = 1,
    kExitConditionsFail = 2,
    kExitNonConvergence = 3,
    kExitUnsupportedField = 4,
    kExitVerifyFailed = 5,
};

/// Known class polynomials used as regression data by `verify --suite pinned`.
struct PinnedPolynomial {
    std::int64_t dk;
    std::int64_t n;
    InvariantKind kind;
    std::vector<std::string> coefficients;
};

inline const std::vector<PinnedPolynomial>& pinned_polynomials()
{
    static const std::vector<PinnedPolynomial> table{
        {-7, 7, InvariantKind::DeltaQuotient,
         {"1", "234857", "24694815621", "295908620105035", "943957383096939785", "356807315211847521",
          "38973886319454982", "-117649"}},
        {-7, 7, InvariantKind::ClassicalJ,
         {"1", "18561099067532582351348250", "54379116263846797396254926859375",
          "344514398594838596665876837347342843995647646484375",
          "1009848457088842748174122781381460720529620832094970703125",
          "1480797351289795967859364968037513969226011238564633514404296875",
          "-3972653601649066484326573605251406741304015473521796878814697265625",
          "4791576562341747034548276661270093305105027267573103845119476318359375"}},
        {-20, 6, InvariantKind::DeltaQuotient,
         {"1", "-1304008", "16670918428", "30056736254344", "23344024601638470", "7327603919934344",
          "1949665164230428", "-1597207512008", "1"}},
        {-8, 9, InvariantKind::DeltaQuotient,
         {"1", "52079706", "2739284675932815", "12787916715651570220", "190732505724302106460815",
          "-268398119546256294", "1"}},
    };
    return table;
}

namespace detail {

inline int run_guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const nonconvergence_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const precision_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const unsupported_field_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnsupportedField;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}

inline OrderSpec order_from_input(std::int64_t dk_input, std::int64_t N)
{
    if (N < 2)
        throw domain_error("conductor N must be >= 2");
    return make_order(normalize_discriminant(dk_input), N);
}

inline std::string render_factorization(const Factorization& f)
{
    std::string s;
    for (const auto& [p, e] : f) {
        if (!s.empty())
            s += "*";
        s += std::to_string(p);
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

inline std::string render_prime_ideal(const PrimeIdeal& P)
{
    if (P.split.kind == Splitting::Inert)
        return "(" + std::to_string(P.p) + ")";
    return "(" + std::to_string(P.p) + ", theta - " + std::to_string(P.root) + ")";
}

inline std::string render_rational(const BigRational& q) { return q.get_str(); }

inline std::optional<BetaTable> load_table(const RunConfig& cfg)
{
    if (!cfg.beta_table_path)
        return std::nullopt;
    return load_beta_table(*cfg.beta_table_path);
}

inline std::string sci(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

}  // namespace detail

// ---- check ------------------------------------------------------------------

inline int cmd_check(std::int64_t dk_input, std::int64_t N, const RunConfig& cfg, std::ostream& out,
                     std::ostream& err)
{
    return detail::run_guarded(err, [&] {
        cfg.validate();
        const auto order = detail::order_from_input(dk_input, N);
        const auto rep = condition_report(order);
        const bool holds = rep.prime_condition_holds || rep.inequality_condition_holds;

        if (cfg.output_format == OutputFormat::Json) {
            ordered_json j;
            j["dk"] = order.field.d_K;
            j["n"] = order.N;
            j["prime_condition"] = rep.prime_condition_holds;
            j["inequality_condition"] = rep.inequality_condition_holds;
            j["inequality_lhs"] = rep.lhs_inequality ? ordered_json(detail::render_rational(*rep.lhs_inequality))
                                                     : ordered_json(nullptr);
            j["ring_class_degree"] = rep.ring_class_degree;
            j["ray_class_degree"] = rep.ray_class_degree;
            j["gal_KN_HO_size"] = rep.gal_KN_HO_size;
            j["epsilon"] = ordered_json::array();
            for (const auto& e : rep.epsilon)
                j["epsilon"].push_back({{"ideal", detail::render_prime_ideal(e.prime)},
                                        {"exponent", e.exponent},
                                        {"epsilon", e.epsilon},
                                        {"epsilon_hat", e.epsilon_hat}});
            j["warning"] = rep.warning();
            out << j.dump() << "\n";
            return holds ? kExitOk : kExitConditionsFail;
        }

        const auto& F = order.field;
        out << "field: d_K = " << F.d_K << ", h_K = " << F.h_K << ", omega_K = " << F.omega_K << "\n";
        out << "conductor: N = " << order.N << " = " << detail::render_factorization(order.factors) << "\n";
        for (std::size_t k = 0; k < order.factors.size(); ++k)
            out << "  p = " << order.factors[k].prime << ": " << to_string(order.splits[k].kind)
                << ", e = " << order.factors[k].exponent << "\n";
        out << "ring class degree [H_O:K]: " << rep.ring_class_degree << "\n";
        out << "ray class degree [K_N:K]: " << rep.ray_class_degree << "\n";
        out << "[K_N:H_O]: " << rep.gal_KN_HO_size << "\n";
        for (const auto& e : rep.epsilon)
            out << "  " << detail::render_prime_ideal(e.prime) << "^" << e.exponent << ": epsilon = " << e.epsilon
                << ", epsilon_hat = " << e.epsilon_hat << "\n";
        out << "prime condition (odd, inert or ramified): " << (rep.prime_condition_holds ? "true" : "false")
            << "\n";
        if (rep.lhs_inequality)
            out << "inequality condition: " << (rep.inequality_condition_holds ? "true" : "false")
                << " (lhs = " << detail::render_rational(*rep.lhs_inequality) << ")\n";
        else
            out << "inequality condition: not applicable for this field\n";
        if (rep.warning())
            out << "warning: neither sufficient condition holds; the invariant can still be computed, "
                   "but its generating property is not guaranteed\n";
        return holds ? kExitOk : kExitConditionsFail;
    });
}

// ---- classpoly ----------------------------------------------------------------

inline int cmd_classpoly(std::int64_t dk_input, std::int64_t N, InvariantKind kind, const RunConfig& cfg, bool force,
                         std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&] {
        cfg.validate();
        const auto order = detail::order_from_input(dk_input, N);
        const auto spec = invariant_spec(order, kind);
        const std::string kind_name = to_string(kind);
        const auto cache = cfg.cache_path ? cfg.cache_path : default_cache_path();
        const bool text = cfg.output_format == OutputFormat::Text;
        // a bad table file is an input error even when the cache could answer
        const auto table = detail::load_table(cfg);

        std::optional<CacheRecord> hit;
        if (cache && !force)
            hit = cache_lookup(*cache, order.field.d_K, order.N, kind_name);

        IntPolynomial poly;
        std::optional<ClassPolyResult> fresh;
        if (hit) {
            poly = hit->polynomial();
        } else {
            fresh = class_polynomial(spec, cfg.classpoly_config(table ? &*table : nullptr));
            poly = fresh->polynomial;
        }
        const auto rep = condition_report(order);
        if (!hit && cache) {
            CacheRecord rec{order.field.d_K, order.N, kind_name, poly.to_strings(), fresh->report.prec_used,
                            rep.prime_condition_holds, rep.inequality_condition_holds, kVersion};
            cache_append(*cache, rec);
        }

        if (!text) {
            out << render_json({order.field.d_K, order.N, kind_name, poly}) << "\n";
            return kExitOk;
        }

        out << poly.to_string() << "\n";
        out << "invariant: " << describe(spec) << ", degree " << poly.degree() << " (ring class degree "
            << rep.ring_class_degree << ")\n";
        if (hit) {
            out << "source: cache " << *cache << " (computed at " << hit->prec_used << " bits)\n";
        } else {
            const auto& r = fresh->report;
            out << "precision: " << r.prec_used << " bits, retries " << r.retries << ", max |Im| "
                << detail::sci(r.max_imag) << ", max rounding residue " << detail::sci(r.max_frac) << "\n";
            if (r.near_duplicates > 0)
                out << "warning: " << r.near_duplicates << " pair(s) of nearly coincident conjugates\n";
        }

        const auto primes = first_odd_primes(10);
        const auto modp = irreducible_mod_p(poly, primes);
        if (modp.verdict == Irreducibility::Irreducible) {
            out << "irreducible: yes (irreducible mod " << *modp.witness_prime << ")\n";
        } else {
            out << "irreducible mod p: inconclusive for the first 10 odd primes; divisor relation unverified\n";
            if (fresh) {
                const auto cert = certify_irreducible(poly, fresh->roots, first_odd_primes(25));
                if (cert.verdict == Irreducibility::Irreducible)
                    out << "irreducible over Q: yes (root-subset search, " << cert.subsets_checked
                        << " candidate factors excluded)\n";
                else if (cert.verdict == Irreducibility::Reducible)
                    out << "irreducible over Q: no, factor " << cert.factor->to_string() << "\n";
                else
                    out << "irreducible over Q: undecided\n";
            }
        }
        if (rep.warning())
            out << "warning: neither sufficient condition holds for this order\n";
        return kExitOk;
    });
}

// ---- verify -------------------------------------------------------------------

struct VerifyOptions {
    std::string suite = "all";
    std::int64_t n_max = 12;
    std::optional<std::int64_t> dk;
    std::optional<std::int64_t> n;
};

inline int cmd_verify(const VerifyOptions& opt, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&] {
        cfg.validate();
        const auto prec = cfg.precision_bits;
        const auto threshold = pow2(-static_cast<long>(prec / 2), prec);
        const std::string& suite = opt.suite == "stod" ? std::string("siegel") : opt.suite;
        if (suite != "all" && suite != "siegel" && suite != "norm" && suite != "pinned")
            throw config_error("unknown suite '" + opt.suite + "' (expected siegel, norm, pinned or all)");
        if (opt.n_max < 1)
            throw config_error("--n-max must be >= 1");
        int failures = 0;
        auto report = [&](const std::string& label, bool ok, const std::string& detail) {
            out << (ok ? "PASS " : "FAIL ") << label << "  " << detail << "\n";
            if (!ok)
                ++failures;
        };

        if (suite == "all" || suite == "siegel") {
            const std::vector<std::pair<std::string, UpperHalfPoint>> points{
                {"i", UpperHalfPoint(BigComplex(0.0, 1.0, prec))},
                {"2i", UpperHalfPoint(BigComplex(0.0, 2.0, prec))},
                {"(1+3i)/2", UpperHalfPoint(BigComplex(0.5, 1.5, prec))},
            };
            for (std::int64_t N = 1; N <= opt.n_max; ++N)
                for (const auto& [name, tau] : points) {
                    const auto r = verify_siegel_delta(N, tau, prec);
                    report("siegel N=" + std::to_string(N) + " tau=" + name, r < threshold,
                           "residual " + r.to_scientific(3));
                }
        }
        if (suite == "all" || suite == "norm") {
            std::vector<std::pair<std::int64_t, std::int64_t>> orders;
            if (opt.dk || opt.n) {
                if (!opt.dk || !opt.n)
                    throw config_error("--suite norm needs both --dk and --n, or neither");
                orders.emplace_back(*opt.dk, *opt.n);
            } else {
                orders = {{-7, 7}, {-20, 6}, {-8, 9}};
            }
            for (const auto& [dk, n] : orders) {
                const auto order = detail::order_from_input(dk, n);
                const auto r = verify_norm_identity(order, prec);
                report("norm d_K=" + std::to_string(order.field.d_K) + " N=" + std::to_string(n), r < threshold,
                       "residual " + r.to_scientific(3));
            }
        }
        if (suite == "all" || suite == "pinned") {
            const auto table = detail::load_table(cfg);
            for (const auto& pin : pinned_polynomials()) {
                const auto spec = invariant_spec(make_order(pin.dk, pin.n), pin.kind);
                const auto res = class_polynomial(spec, cfg.classpoly_config(table ? &*table : nullptr));
                const bool ok = res.polynomial.to_strings() == pin.coefficients;
                report(std::string("pinned ") + to_string(pin.kind) + " d_K=" + std::to_string(pin.dk) +
                           " N=" + std::to_string(pin.n),
                       ok, "degree " + std::to_string(res.polynomial.degree()) + ", " +
                               std::to_string(res.report.prec_used) + " bits");
            }
        }
        out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << "\n";
        return failures == 0 ? kExitOk : kExitVerifyFailed;
    });
}

// ---- eval ---------------------------------------------------------------------

struct EvalResult {
    BigComplex value;
    BigFloat error_bound;
    Precision prec_used;
};

/// Invariant value with enough precision for `digits` significant decimals;
/// the error bound is the gap to a re-evaluation at doubled precision plus
/// the rounding unit.
inline EvalResult evaluate_with_digits(const InvariantSpec& spec, int digits, const RunConfig& cfg)
{
    if (digits < 1)
        throw config_error("--digits must be >= 1");
    const auto needed = static_cast<Precision>(std::ceil(digits * std::log2(10.0))) + 32;
    Precision prec = std::max(cfg.precision_bits, needed);
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt, prec *= 2) {
        try {
            auto v = invariant_value(spec, prec);
            // magnitude bits count against the digit budget
            const auto mag = v.abs();
            const long int_bits = mag.is_zero() ? 0 : std::max(0L, static_cast<long>(mag.exponent2()));
            if (static_cast<long>(prec) < static_cast<long>(needed) + int_bits) {
                prec = static_cast<Precision>(needed + int_bits) / 2 + 1;
                continue;
            }
            const auto check = invariant_value(spec, 2 * prec);
            auto bound = (check - v).abs();
            bound += mag * pow2(-static_cast<long>(prec), prec);
            return {std::move(v), std::move(bound), prec};
        } catch (const precision_error&) {
            if (attempt == cfg.max_retries)
                throw;
        }
    }
    throw nonconvergence_error("could not reach the requested number of digits");
}

inline int cmd_eval(std::int64_t dk_input, std::int64_t N, InvariantKind kind, int digits, const RunConfig& cfg,
                    std::ostream& out, std::ostream& err)
{
    return detail::run_guarded(err, [&] {
        cfg.validate();
        const auto order = detail::order_from_input(dk_input, N);
        const auto spec = invariant_spec(order, kind);
        const auto res = evaluate_with_digits(spec, digits, cfg);
        const auto value_str = res.value.real().to_scientific(digits - 1);
        const auto bound_str = res.error_bound.to_scientific(2);
        if (cfg.output_format == OutputFormat::Json) {
            ordered_json j;
            j["dk"] = order.field.d_K;
            j["n"] = order.N;
            j["kind"] = to_string(kind);
            j["value"] = value_str;
            j["error_bound"] = bound_str;
            j["precision"] = res.prec_used;
            out << j.dump() << "\n";
            return kExitOk;
        }
        out << describe(spec) << " at theta = " << value_str << "\n";
        out << "error bound: " << bound_str << " (" << res.prec_used << " bits)\n";
        return kExitOk;
    });
}

}  // namespace rci
