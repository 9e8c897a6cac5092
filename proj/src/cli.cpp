#include "bpcalc/cli.hpp"

#include "bpcalc/render.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace bpcalc {

int default_truncation(int prime)
{
    switch (prime) {
    case 2:
        return 13;
    case 3:
        return 25;
    case 5:
        return 79;
    case 7:
        return 167;
    case 11:
        return 379;
    case 13:
        return 515;
    default:
        // enough to see MC_{2(p-1)} modulo xi^{p}
        return truncation_for(prime, 2 * (prime - 1), prime);
    }
}

std::vector<int> parse_ideal(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto start = item.find_first_not_of(" \t");
        if (start == std::string::npos)
            continue;
        item = item.substr(start, item.find_last_not_of(" \t") - start + 1);
        if (!item.empty() && (item[0] == 'v' || item[0] == 'V'))
            item = item.substr(1);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument("bad ideal generator '" + item + "'");
        const int g = std::stoi(item);
        if (g < 1 || g > Monomial::kMaxGenerators)
            throw InvalidArgument("ideal generator v" + item + " out of range");
        out.push_back(g);
    }
    return out;
}

const FglContext& Workspace::context(int prime, int truncation)
{
    auto& slot = contexts_[{prime, truncation}];
    if (!slot) {
        if (progress_)
            *progress_ << "[bpcalc] log/exp p=" << prime << " k=" << truncation << std::endl;
        slot = std::make_unique<FglContext>(prime, truncation);
    }
    return *slot;
}

const PowerOpData& Workspace::power_op(int prime, int truncation, int max_index)
{
    const int want = std::min(max_index, truncation);
    auto it = power_ops_.find({prime, truncation});
    if (it != power_ops_.end() && static_cast<int>(it->second.a.size()) > want)
        return it->second;
    const auto& ctx = context(prime, truncation);
    if (progress_)
        *progress_ << "[bpcalc] power operation p=" << prime << " k=" << truncation << " a_0..a_" << want
                   << std::endl;
    auto data = power_op_series(ctx, want);
    return power_ops_[{prime, truncation}] = std::move(data);
}

PSeriesReducer& Workspace::reducer(int prime)
{
    auto& slot = reducers_[prime];
    if (!slot)
        slot = std::make_unique<PSeriesReducer>(prime);
    return *slot;
}

namespace {

McOptions mc_options(Workspace& ws, bool force_full)
{
    McOptions opts;
    opts.force_full = force_full;
    if (auto* os = ws.progress()) {
        opts.progress = [os](std::size_t done, std::size_t total) {
            *os << "[bpcalc] summands " << done << "/" << total << std::endl;
        };
    }
    return opts;
}

template <class S>
TruncatedSeries<S> in_basis(const FglContext& ctx, const TruncatedSeries<S>& l_series, Basis basis)
{
    return basis == Basis::L ? l_series : hazewinkel_substitute(ctx, l_series);
}

} // namespace

RationalSeries compute_entry(const GoldenEntry& entry, Workspace& ws)
{
    const int p = entry.prime;
    const int k = entry.truncation;
    const Basis basis = entry.series.basis();
    RationalSeries out(p, basis, 0);
    if (entry.kind == "log") {
        out = in_basis(ws.context(p, k), ws.context(p, k).log(), basis);
    } else if (entry.kind == "exp") {
        out = in_basis(ws.context(p, k), ws.context(p, k).exp(), basis);
    } else if (entry.kind == "reduced-pseries") {
        out = reduced_p_series(ws.context(p, k), basis);
    } else if (entry.kind == "a") {
        out = to_rational_series(ws.power_op(p, k, entry.index).a.at(static_cast<std::size_t>(entry.index)));
    } else if (entry.kind == "a-reduced") {
        const auto& a = ws.power_op(p, k, entry.index).a.at(static_cast<std::size_t>(entry.index));
        out = to_rational_series(canonical_rep(a, ws.reducer(p)).series);
    } else if (entry.kind == "mc") {
        const auto& ctx = ws.context(p, k);
        const auto& data = ws.power_op(p, k, mc_max_index(entry.index));
        out = to_rational_series(mc(ctx, data, entry.index, ws.reducer(p), mc_options(ws, false)).reduced.series);
    } else {
        throw InvalidArgument("unknown golden entry kind '" + entry.kind + "'");
    }
    return apply_ideal(out, entry.ideal);
}

namespace {

template <class S>
void emit_series(std::ostream& out, const RunConfig& cfg, int k, const std::string& label,
                 const TruncatedSeries<S>& s)
{
    const auto killed = apply_ideal(s, cfg.ideal);
    if (cfg.format == Format::Json)
        out << series_to_json(killed, k).dump() << '\n';
    else
        out << label << " = " << render_series(killed) << '\n';
}

std::string certificate_text(const std::optional<Certificate>& c, int validity)
{
    if (!c)
        return "none (zero modulo xi^" + std::to_string(validity) + "; inconclusive)";
    return "xi^" + std::to_string(c->xi_exponent) + " (" + render_polynomial(c->lead) + ")";
}

int run_mc(const RunConfig& cfg, int k, Workspace& ws, std::ostream& out)
{
    if (!cfg.n || *cfg.n < 1)
        throw InvalidArgument("mc needs --n >= 1");
    const int n = *cfg.n;
    const int p = cfg.prime;
    const auto& ctx = ws.context(p, k);
    const auto& data = ws.power_op(p, k, mc_max_index(n));
    auto result = mc(ctx, data, n, ws.reducer(p), mc_options(ws, cfg.force_full));

    ReducedSeries reduced{apply_ideal(result.reduced.series, cfg.ideal), true};
    const auto cert = nonvanishing_certificate(reduced);
    const bool obstruction = is_obstruction_index(n, p);

    if (cfg.format == Format::Json) {
        Json j;
        j["n"] = n;
        j["prime"] = p;
        j["truncation"] = k;
        j["obstruction_index"] = obstruction;
        j["shortcut"] = result.shortcut;
        j["reduced"] = series_to_json(reduced.series, k);
        if (cert)
            j["certificate"] = {{"xi", cert->xi_exponent}, {"poly", polynomial_to_json(cert->lead)}};
        else
            j["certificate"] = nullptr;
        if (cfg.show_raw && result.raw)
            j["raw"] = series_to_json(apply_ideal(*result.raw, cfg.ideal), k);
        out << j.dump() << '\n';
        return kOk;
    }
    const std::string name = "MC_" + std::to_string(n) + "(xi)";
    out << name << " = " << render_series(reduced.series) << " mod <" << p << ">xi\n";
    if (result.shortcut)
        out << "zero by sparseness: " << n << " is not divisible by " << p - 1 << '\n';
    out << "obstruction index: "
        << (obstruction ? "yes" : "no (n = p^m - 1)") << '\n';
    out << "certificate: " << certificate_text(cert, reduced.series.validity()) << '\n';
    if (cfg.show_raw && result.raw)
        out << "raw: " << render_series(apply_ideal(*result.raw, cfg.ideal)) << '\n';
    return kOk;
}

int run_power_op(const RunConfig& cfg, int k, Workspace& ws, std::ostream& out)
{
    const int p = cfg.prime;
    const int top = std::min(cfg.max_index.value_or(2 * (p - 1)), k);
    if (top < 0)
        throw InvalidArgument("--max-index must be non-negative");
    const auto& data = ws.power_op(p, k, top);
    Json list = Json::array();
    for (int i = 0; i <= top && i < static_cast<int>(data.a.size()); ++i) {
        const auto a = apply_ideal(data.a[static_cast<std::size_t>(i)], cfg.ideal);
        std::optional<IntegerSeries> red;
        if (cfg.reduce)
            red = apply_ideal(canonical_rep(data.a[static_cast<std::size_t>(i)], ws.reducer(p)).series, cfg.ideal);
        if (cfg.format == Format::Json) {
            Json item{{"i", i}, {"validity", a.validity()}, {"series", series_to_json(a, k)}};
            if (red)
                item["reduced"] = series_to_json(*red, k);
            list.push_back(item);
        } else {
            out << "a_" << i << " = " << render_series(a) << '\n';
            if (red)
                out << "a_" << i << " = " << render_series(*red) << " mod <" << p << ">xi\n";
        }
    }
    if (cfg.format == Format::Json)
        out << Json{{"prime", p}, {"truncation", k}, {"a", list}}.dump() << '\n';
    return kOk;
}

int run_verify(const RunConfig& cfg, Workspace& ws, std::ostream& out)
{
    std::vector<std::string> suites = cfg.suites;
    if (suites.empty())
        suites = {"example", "p2", "p3"};
    if (suites.size() == 1 && suites[0] == "all")
        suites = suite_names();
    bool all_ok = true;
    Json report = Json::array();
    for (const auto& name : suites) {
        const auto suite = load_suite(name);
        for (const auto& entry : suite.entries) {
            const auto computed = compute_entry(entry, ws);
            const auto cmp = compare_series(computed, entry.series);
            all_ok = all_ok && cmp.match;
            if (cfg.format == Format::Json) {
                report.push_back({{"suite", suite.name},
                                  {"entry", entry.name},
                                  {"match", cmp.match},
                                  {"compared", cmp.compared},
                                  {"table_validity", cmp.golden_validity},
                                  {"computed_validity", cmp.computed_validity},
                                  {"mismatch", cmp.mismatch}});
                continue;
            }
            out << (cmp.match ? "ok    " : "FAIL  ") << suite.name << '/' << entry.name << ": through xi^"
                << cmp.compared - 1;
            if (cmp.computed_validity < cmp.golden_validity)
                out << " (table shows O(xi^" << cmp.golden_validity << "), computed O(xi^" << cmp.computed_validity
                    << "))";
            if (!cmp.match)
                out << "; " << cmp.mismatch;
            out << '\n';
        }
    }
    if (cfg.format == Format::Json)
        out << Json{{"ok", all_ok}, {"results", report}}.dump() << '\n';
    return all_ok ? kOk : kGoldenMismatch;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        set_thread_count(cfg.threads);
        Workspace ws(cfg.progress ? &err : nullptr);
        if (cfg.command == "verify")
            return run_verify(cfg, ws, out);

        if (!is_prime(cfg.prime))
            throw InvalidArgument(std::to_string(cfg.prime) + " is not prime");
        const int k = cfg.truncation.value_or(default_truncation(cfg.prime));
        if (k < 1)
            throw InvalidArgument("truncation must be at least 1");
        const int p = cfg.prime;

        if (cfg.command == "log") {
            const auto& ctx = ws.context(p, k);
            emit_series(out, cfg, k, "log(xi)", in_basis(ctx, ctx.log(), cfg.basis.value_or(Basis::L)));
        } else if (cfg.command == "exp") {
            const auto& ctx = ws.context(p, k);
            emit_series(out, cfg, k, "exp(xi)", in_basis(ctx, ctx.exp(), cfg.basis.value_or(Basis::L)));
        } else if (cfg.command == "pseries") {
            const auto& ctx = ws.context(p, k);
            const int n = cfg.n.value_or(p);
            emit_series(out, cfg, k, "[" + std::to_string(n) + "](xi)",
                        in_basis(ctx, n_series(ctx, n), cfg.basis.value_or(Basis::V)));
        } else if (cfg.command == "reduced-pseries") {
            const auto s = reduced_p_series(ws.context(p, k), cfg.basis.value_or(Basis::V));
            if (s.basis() == Basis::V)
                emit_series(out, cfg, k, "<" + std::to_string(p) + ">(xi)", to_integer_series(s));
            else
                emit_series(out, cfg, k, "<" + std::to_string(p) + ">(xi)", s);
        } else if (cfg.command == "power-op-coeffs") {
            return run_power_op(cfg, k, ws, out);
        } else if (cfg.command == "mc") {
            return run_mc(cfg, k, ws, out);
        } else {
            throw InvalidArgument("unknown command '" + cfg.command + "'");
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
}

int main_entry(int argc, char** argv)
{
    CLI::App app{"Brown-Peterson formal group law series and McClure obstructions"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    int n = 0;
    int k = 0;
    int max_index = 0;
    std::string ideal;
    std::string format = "text";
    std::string basis;

    app.add_option("--prime,-p", cfg.prime, "prime p")->capture_default_str();
    auto* n_opt = app.add_option("--n,-n", n, "obstruction index, or n for pseries");
    auto* k_opt = app.add_option("--truncation,-k", k, "work modulo (xi, x)^{k+1}");
    app.add_option("--ideal", ideal, "generators to kill, e.g. \"v2,v3\"");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    app.add_flag("--force-full", cfg.force_full, "compute MC_n even when sparseness makes it zero");
    app.add_option("--basis", basis, "l or v")->check(CLI::IsMember({"l", "v"}));
    auto* max_opt = app.add_option("--max-index", max_index, "largest a_i to print");
    app.add_flag("--raw", cfg.show_raw, "also print MC_n before reduction");
    app.add_flag("--reduce", cfg.reduce, "also print a_i modulo <p>xi");
    app.add_option("--suite", cfg.suites, "golden suites: example, p2, p3, p5, p7, p11, p13, all")->delimiter(',');
    app.add_flag("--progress", cfg.progress, "progress messages on stderr");

    const std::pair<const char*, const char*> commands[] = {
        {"log", "logarithm in the l basis"},
        {"exp", "exponential in the l basis"},
        {"pseries", "[n]xi (n defaults to p)"},
        {"reduced-pseries", "<p>xi = [p]xi / xi"},
        {"power-op-coeffs", "a_i of the power operation"},
        {"mc", "McClure obstruction MC_n modulo <p>xi"},
        {"verify", "compare against the golden tables"},
    };
    for (auto [name, help] : commands)
        app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidationFailure;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (*n_opt)
        cfg.n = n;
    if (*k_opt)
        cfg.truncation = k;
    if (*max_opt)
        cfg.max_index = max_index;
    cfg.format = format == "json" ? Format::Json : Format::Text;
    if (!basis.empty())
        cfg.basis = basis == "l" ? Basis::L : Basis::V;
    try {
        cfg.ideal = parse_ideal(ideal);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    return run(cfg, std::cout, std::cerr);
}

} // namespace bpcalc
