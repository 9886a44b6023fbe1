#include "affschur/cli.hpp"

#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "affschur/acceptance.hpp"
#include "affschur/asympt.hpp"
#include "affschur/hecke.hpp"
#include "affschur/kl_cache.hpp"
#include "affschur/schur.hpp"

namespace affschur {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Values of the per-subcommand options; empty strings mean "not given".
struct Args {
    std::string w, x, y, z;
    std::string a, b, c;  // matrices --A --B --C
    std::string ha, hb;   // Hecke elements --a --b
    std::string lambda, mu;
    std::string word;
    long omega = 0;
    std::string basis;
    std::string flavor = "L";
    bool prime = false;
    bool hecke = false;
    bool list = false;
    bool matrices = false;
    int samples = 60;
    std::vector<int> only;
};

const std::string& need(const std::string& v, const char* flag) {
    if (v.empty()) throw UsageError(std::string(flag) + " is required");
    return v;
}

class Session {
public:
    Session(RunConfig cfg, Args args, std::ostream& err) : cfg(std::move(cfg)), args(std::move(args)), err_(err) {}

    RunConfig cfg;
    Args args;
    int status = kExitOk;

    OutputFormat fmt() const { return cfg.format; }

    /// Fixes the period (checking it against --r) and loads the KL cache once.
    void use_period(int r) {
        if (cfg.r && *cfg.r != r) throw PeriodMismatch(r, *cfg.r);
        cfg.r = r;
        if (cfg.cache_path && !cache_) {
            cache_.emplace(*cfg.cache_path, r);
            auto st = cache_->load(HeckeAlgebra::shared(r));
            err_ << "cache: loaded " << st.loaded << ", duplicates " << st.duplicates << ", other period "
                 << st.other_period << ", warnings " << st.warnings << "\n";
        }
    }

    AffPerm window(const std::string& text) {
        AffPerm w = parse_window(text, cfg.r);
        use_period(w.period());
        return w;
    }

    PeriodicMatrix matrix(const std::string& text) {
        PeriodicMatrix m = parse_matrix(text, cfg.n);
        use_period(m.r());
        return m;
    }

    Composition composition(const std::string& text) {
        Composition c = parse_composition(text);
        use_period(c.r());
        return c;
    }

    /// --word with --omega, or --w.  With word_fallback a --w that is not a
    /// valid window is read as a reduced word.
    AffPerm element(bool word_fallback = false) {
        if (!args.word.empty()) return from_word_text(args.word);
        const std::string& text = need(args.w, "--w or --word");
        try {
            return window(text);
        } catch (const InvalidWindow&) {
            if (!word_fallback) throw;
            return from_word_text(text);
        }
    }

    void finish() {
        if (!cache_) return;
        const auto& alg = HeckeAlgebra::shared(cache_->period());
        std::size_t appended = cache_->save(alg);
        err_ << "cache: hits " << alg.preloaded_hits() << ", appended " << appended << "\n";
    }

private:
    AffPerm from_word_text(const std::string& text) {
        int r = cfg.period();
        use_period(r);
        auto word = parse_int_list(text);
        return from_word(r, args.omega, word);
    }

    std::ostream& err_;
    std::optional<KLCache> cache_;
};

json exact(json doc) {
    doc["provenance"] = "exact";
    return doc;
}

json certified(json doc) {
    doc["provenance"] = "window-bounded, certified";
    return doc;
}

// ---- group and Hecke algebra ----

json cmd_length(Session& s) {
    AffPerm w = s.element();
    return exact({{"window", window_json(w)}, {"length", w.length()}, {"omega", w.omega_degree()}});
}

json cmd_word(Session& s) {
    AffPerm w = s.element();
    ReducedWord rw = reduced_word(w);
    return exact({{"window", window_json(w)}, {"omega", rw.omega}, {"word", rw.word}, {"length", w.length()}});
}

json cmd_bruhat(Session& s) {
    AffPerm y = s.window(need(s.args.y, "--y"));
    AffPerm w = s.window(need(s.args.w, "--w"));
    return exact({{"leq", bruhat_leq(y, w)}});
}

json cmd_klpoly(Session& s) {
    AffPerm y = s.window(need(s.args.y, "--y"));
    AffPerm w = s.window(need(s.args.w, "--w"));
    return exact({{"P", poly_json(kl_poly(y, w), s.fmt())}, {"mu", kl_mu(y, w)}});
}

json cmd_cbasis(Session& s) {
    AffPerm w = s.element(true);
    return exact({{"element", hecke_json(s.args.prime ? cprime_elt(w) : c_elt(w), s.fmt())}});
}

json cmd_hmul(Session& s) {
    if (!s.args.ha.empty() || !s.args.hb.empty()) {
        HeckeElt a = parse_hecke(need(s.args.ha, "--a"));
        HeckeElt b = parse_hecke(need(s.args.hb, "--b"));
        s.use_period(a.period());
        s.use_period(b.period());
        auto to_t = [](const HeckeElt& h) { return h.basis() == HBasis::C ? c_to_t(h) : h; };
        HeckeElt prod = h_mul(to_t(a), to_t(b));
        if (a.basis() == HBasis::C) prod = t_to_c(prod);
        return exact({{"product", hecke_json(prod, s.fmt())}});
    }
    AffPerm x = s.window(need(s.args.x, "--x"));
    AffPerm y = s.window(need(s.args.y, "--y"));
    std::string basis = s.args.basis.empty() ? "C" : s.args.basis;
    if (basis == "C") return exact({{"product", hecke_json(HeckeAlgebra::shared(x.period()).c_product(x, y), s.fmt())}});
    if (basis == "T")
        return exact({{"product", hecke_json(h_mul(HeckeElt::basis_elt(x), HeckeElt::basis_elt(y)), s.fmt())}});
    throw UsageError("--basis is T or C");
}

json cmd_hstruct(Session& s) {
    AffPerm x = s.window(need(s.args.x, "--x"));
    AffPerm y = s.window(need(s.args.y, "--y"));
    AffPerm z = s.window(need(s.args.z, "--z"));
    return exact({{"h", poly_json(h_struct(x, y, z), s.fmt())}});
}

// ---- double cosets and matrices ----

CosetTriple triple_from_args(Session& s) {
    Composition lambda = s.composition(need(s.args.lambda, "--lambda"));
    Composition mu = s.composition(need(s.args.mu, "--mu"));
    AffPerm w = s.window(need(s.args.w, "--w"));
    if (lambda.n() != mu.n()) throw DomainError("lambda and mu have different numbers of parts");
    return CosetTriple(lambda, min_double_rep(w, lambda, mu), mu);
}

json cmd_cosets(Session& s) {
    CosetTriple t = triple_from_args(s);
    json elems = json::array();
    for (const auto& x : double_coset(t)) elems.push_back(window_json(x));
    return exact({{"lambda", composition_json(t.lambda)},
                  {"mu", composition_json(t.mu)},
                  {"min", window_json(t.w)},
                  {"max", window_json(max_double_rep(t.w, t.lambda, t.mu))},
                  {"plus", window_json(plus_rep(t))},
                  {"size", elems.size()},
                  {"elements", elems}});
}

json cmd_matrix(Session& s) {
    CosetTriple t = triple_from_args(s);
    PeriodicMatrix a = matrix_of_triple(t);
    return exact({{"matrix", matrix_json(a)}, {"ro", composition_json(a.ro())}, {"co", composition_json(a.co())}});
}

json cmd_triple(Session& s) {
    PeriodicMatrix a = s.matrix(need(s.args.a, "--A"));
    CosetTriple t = triple_of_matrix(a);
    return exact({{"lambda", composition_json(t.lambda)},
                  {"w", window_json(t.w)},
                  {"mu", composition_json(t.mu)},
                  {"plus", window_json(sigma_plus(a))},
                  {"d_A", d_A_combinatorial(a)}});
}

// ---- q-Schur algebra ----

std::vector<PeriodicMatrix> theta_window(Session& s) {
    s.use_period(s.cfg.period());
    return enumerate_theta(s.cfg.n, s.cfg.period(), s.cfg.L, s.cfg.omega());
}

json window_description(const Session& s) {
    OmegaWindow om = s.cfg.omega();
    return {{"n", s.cfg.n}, {"r", s.cfg.period()}, {"L", s.cfg.L}, {"omega", {om.lo, om.hi}}};
}

json cmd_theta(Session& s) {
    if (s.args.list) {
        json mats = json::array();
        for (const auto& a : theta_window(s)) mats.push_back(matrix_json(a));
        return exact({{"window", window_description(s)}, {"count", mats.size()}, {"matrices", mats}});
    }
    PeriodicMatrix a = s.matrix(need(s.args.a, "--A"));
    std::string basis = s.args.basis.empty() ? "phi" : s.args.basis;
    if (basis == "phi") return exact({{"element", schur_json(theta_in_phi(a), s.fmt())}});
    if (basis == "phihat") return exact({{"element", schur_json(theta_in_phihat(a), s.fmt())}});
    throw UsageError("--basis is phi or phihat");
}

json cmd_gstruct(Session& s) {
    PeriodicMatrix a = s.matrix(need(s.args.a, "--A"));
    PeriodicMatrix b = s.matrix(need(s.args.b, "--B"));
    if (!s.args.c.empty()) {
        PeriodicMatrix c = s.matrix(s.args.c);
        return exact({{"g", poly_json(g_struct(a, b, c), s.fmt())}});
    }
    return exact({{"product", schur_json(theta_product(a, b), s.fmt())}});
}

// ---- asymptotic rings and cells ----

json cmd_afn(Session& s) {
    AValue v;
    json doc;
    if (!s.args.a.empty()) {
        PeriodicMatrix a = s.matrix(s.args.a);
        v = a_matrix(a, s.cfg.L);
        doc = avalue_json(v);
        doc["Delta"] = delta_cap(sigma_plus(a));
    } else {
        AffPerm z = s.window(need(s.args.z, "--z or --A"));
        v = a_bounded(z, s.cfg.L);
        doc = avalue_json(v);
        doc["Delta"] = delta_cap(z);
    }
    doc["L"] = s.cfg.L;
    if (!v.certified) s.status = kExitUncertified;
    return doc;
}

json cmd_gamma(Session& s) {
    if (!s.args.a.empty()) {
        PeriodicMatrix a = s.matrix(s.args.a);
        PeriodicMatrix b = s.matrix(need(s.args.b, "--B"));
        PeriodicMatrix c = s.matrix(need(s.args.c, "--C"));
        return certified({{"gamma", gamma_mat(a, b, c, s.cfg.L).get_str()}});
    }
    AffPerm x = s.window(need(s.args.x, "--x or --A"));
    AffPerm y = s.window(need(s.args.y, "--y"));
    AffPerm z = s.window(need(s.args.z, "--z"));
    return certified({{"gamma", gamma(x, y, z, s.cfg.L).get_str()}});
}

json cmd_dinv(Session& s) {
    s.use_period(s.cfg.period());
    json elems = json::array();
    if (s.args.matrices) {
        for (const auto& d : distinguished_matrices(s.cfg.n, s.cfg.period(), s.cfg.L)) elems.push_back(matrix_json(d));
    } else {
        for (const auto& d : distinguished_involutions(s.cfg.period(), s.cfg.L)) elems.push_back(window_json(d));
    }
    return certified({{"n", s.cfg.n}, {"r", s.cfg.period()}, {"L", s.cfg.L}, {"count", elems.size()}, {"elements", elems}});
}

json cmd_jmul(Session& s) {
    if (!s.args.a.empty()) {
        PeriodicMatrix a = s.matrix(s.args.a);
        PeriodicMatrix b = s.matrix(need(s.args.b, "--B"));
        return certified({{"product", j_json(j_basis_product(a, b, s.cfg.L))}});
    }
    AffPerm x = s.window(need(s.args.x, "--x or --A"));
    AffPerm y = s.window(need(s.args.y, "--y"));
    return certified({{"product", j_json(j_basis_product(x, y, s.cfg.L))}});
}

json cmd_phi_map(Session& s) {
    if (!s.args.a.empty()) {
        PeriodicMatrix a = s.matrix(s.args.a);
        return certified({{"image", j_json(lusztig_phi_schur(a, s.cfg.L), s.fmt())}});
    }
    AffPerm w = s.window(need(s.args.w, "--w or --A"));
    return certified({{"image", j_json(lusztig_phi_hecke(w, s.cfg.L), s.fmt())}});
}

json cmd_cells(Session& s) {
    CellFlavor flavor = cell_flavor_from_string(s.args.flavor);
    if (s.args.hecke) {
        s.use_period(s.cfg.period());
        return cell_report_json(hecke_cell_preorder(ball(s.cfg.period(), s.cfg.L), flavor));
    }
    json doc = cell_report_json(cell_preorder(theta_window(s), flavor));
    doc["window"] = window_description(s);
    return doc;
}

json cmd_lowest_cell(Session& s) {
    auto rep = lowest_cell(s.cfg.n, s.cfg.period(), theta_window(s), s.cfg.L);
    json doc = cell_report_json(rep);
    doc["window"] = window_description(s);
    doc["left_cells"] = rep.cells.size();
    return doc;
}

json cmd_qsuite(Session& s) {
    s.use_period(s.cfg.period());
    SuiteOptions opt;
    opt.n = s.cfg.n;
    opt.r = s.cfg.period();
    opt.L = s.cfg.L;
    opt.omega = s.cfg.omega();
    opt.seed = s.cfg.seed;
    opt.q15_samples = s.args.samples;

    json doc = {{"window", window_description(s)}, {"seed", s.cfg.seed}};
    json details = json::object();
    auto checks = q_suite(opt);
    for (const auto& c : checks) {
        doc[c.name] = to_string(c.status);
        details[c.name] = check_json(c);
    }
    json based = json::object();
    for (const auto& c : based_ring_checks(opt)) {
        based[c.name] = check_json(c);
        checks.push_back(c);
    }
    doc["details"] = details;
    doc["based_ring"] = based;
    doc["provenance"] = "window-bounded, certified";
    s.status = verification_exit_code(checks);
    return doc;
}

json cmd_verify(Session& s) {
    AcceptanceOptions opt;
    opt.seed = s.cfg.seed;
    opt.only = s.args.only;
    json crit = json::array();
    bool ok = true;
    for (const auto& c : run_acceptance(opt)) {
        crit.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}});
        ok = ok && c.passed;
    }
    if (!ok) s.status = kExitVerification;
    return {{"criteria", crit}, {"passed", ok}};
}

json cmd_cache_stats(Session& s) {
    if (!s.cfg.cache_path) throw UsageError("cache-stats needs --cache");
    auto st = scan_cache_file(*s.cfg.cache_path);
    json periods = json::object();
    for (const auto& [r, count] : st.per_period) periods[std::to_string(r)] = count;
    return {{"path", *s.cfg.cache_path}, {"lines", st.lines}, {"warnings", st.warnings}, {"periods", periods}};
}

struct Command {
    const char* name;
    const char* help;
    json (*run)(Session&);
};

const Command kCommands[] = {
    {"length", "length and omega-degree of --w", cmd_length},
    {"word", "reduced word of --w", cmd_word},
    {"bruhat", "whether --y <= --w in the Bruhat order", cmd_bruhat},
    {"klpoly", "Kazhdan-Lusztig polynomial P_{y,w}", cmd_klpoly},
    {"cbasis", "C_w (or C'_w with --prime) in the T basis", cmd_cbasis},
    {"hmul", "C_x C_y, T_x T_y, or the product of two JSON elements", cmd_hmul},
    {"hstruct", "structure constant h_{x,y,z}", cmd_hstruct},
    {"cosets", "the double coset W_lambda w W_mu", cmd_cosets},
    {"matrix", "matrix of the triple (lambda, w, mu)", cmd_matrix},
    {"triple", "triple of the matrix --A", cmd_triple},
    {"theta", "theta_A in the phi basis, or the theta window with --list", cmd_theta},
    {"gstruct", "theta_A theta_B, or the coefficient of theta_C", cmd_gstruct},
    {"afn", "window-bounded a-function of --z or --A", cmd_afn},
    {"gamma", "gamma_{x,y,z} or gamma_{A,B,C}", cmd_gamma},
    {"dinv", "distinguished involutions (or matrices with --matrices)", cmd_dinv},
    {"jmul", "t_x t_y or t_A t_B in the asymptotic ring", cmd_jmul},
    {"phi-map", "image of C_w or theta_A in the asymptotic ring", cmd_phi_map},
    {"cells", "cell preorder on the theta window (or a W ball with --hecke)", cmd_cells},
    {"lowest-cell", "left cells of the lowest two-sided cell inside the window", cmd_lowest_cell},
    {"qsuite", "Q1-Q15 and the based-ring checks on the window", cmd_qsuite},
    {"verify", "the full acceptance suite", cmd_verify},
    {"cache-stats", "records and bad lines of the KL cache file", cmd_cache_stats},
};

void add_command_options(CLI::App& sub, const std::string& name, Args& a) {
    auto opt = [&](const char* flag, std::string& dst, const char* help) { sub.add_option(flag, dst, help); };
    if (name == "length" || name == "word" || name == "cbasis") {
        opt("--w", a.w, "window, inline a,b,c[^k] or JSON");
        opt("--word", a.word, "reduced word i,j,k (with --omega)");
        sub.add_option("--omega", a.omega, "omega-degree for --word");
        if (name == "cbasis") sub.add_flag("--prime", a.prime, "C'_w instead of C_w");
    } else if (name == "bruhat" || name == "klpoly") {
        opt("--y", a.y, "window");
        opt("--w", a.w, "window");
    } else if (name == "hmul") {
        opt("--x", a.x, "window");
        opt("--y", a.y, "window");
        opt("--basis", a.basis, "C (default) or T");
        opt("--a", a.ha, "Hecke element as JSON");
        opt("--b", a.hb, "Hecke element as JSON");
    } else if (name == "hstruct" || name == "gamma" || name == "jmul") {
        opt("--x", a.x, "window");
        opt("--y", a.y, "window");
        if (name != "jmul") opt("--z", a.z, "window");
        opt("--A", a.a, "matrix");
        opt("--B", a.b, "matrix");
        if (name == "gamma") opt("--C", a.c, "matrix");
    } else if (name == "cosets" || name == "matrix") {
        opt("--lambda", a.lambda, "composition");
        opt("--w", a.w, "window");
        opt("--mu", a.mu, "composition");
    } else if (name == "triple") {
        opt("--A", a.a, "matrix");
    } else if (name == "theta") {
        opt("--A", a.a, "matrix");
        opt("--basis", a.basis, "phi (default) or phihat");
        sub.add_flag("--list", a.list, "list the theta window");
    } else if (name == "gstruct") {
        opt("--A", a.a, "matrix");
        opt("--B", a.b, "matrix");
        opt("--C", a.c, "matrix");
    } else if (name == "afn") {
        opt("--z", a.z, "window");
        opt("--A", a.a, "matrix");
    } else if (name == "dinv") {
        sub.add_flag("--matrices", a.matrices, "list D_Delta(n, r)");
    } else if (name == "phi-map") {
        opt("--w", a.w, "window");
        opt("--A", a.a, "matrix");
    } else if (name == "cells") {
        sub.add_option("--flavor", a.flavor, "L, R or LR");
        sub.add_flag("--hecke", a.hecke, "cells of C_w on the W' ball of radius L");
    } else if (name == "qsuite") {
        sub.add_option("--samples", a.samples, "Q15 sample count");
    } else if (name == "verify") {
        sub.add_option("--only", a.only, "criterion ids to run");
    }
}

void check_config(const RunConfig& cfg) {
    if (cfg.r && *cfg.r < 1) throw UsageError("--r must be >= 1");
    if (cfg.n < 1) throw UsageError("--n must be >= 1");
    if (cfg.L < 0) throw UsageError("--L must be >= 0");
}

}  // namespace

int verification_exit_code(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return kExitVerification;
    return kExitOk;
}

OmegaWindow parse_omega_window(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("omega window is lo:hi");
    try {
        std::size_t p1 = 0, p2 = 0;
        std::string lo_s = s.substr(0, colon), hi_s = s.substr(colon + 1);
        long lo = std::stol(lo_s, &p1), hi = std::stol(hi_s, &p2);
        if (p1 != lo_s.size() || p2 != hi_s.size()) throw std::invalid_argument(s);
        if (lo > hi) throw UsageError("omega window " + s + " is not ordered");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw UsageError("omega window is lo:hi, got '" + s + "'");
    }
}

int cmd_dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations in affine Hecke and q-Schur algebras", "affschur"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    RunConfig cfg;
    Args args;
    int r_flag = 0;
    std::string omega_flag, cache_flag, format_flag = "json";
    auto* r_opt = app.add_option("--r", r_flag, "period r (inferred from the input when omitted)")->envname("AFFSCHUR_R");
    app.add_option("--n", cfg.n, "number of parts n")->envname("AFFSCHUR_N");
    app.add_option("--L", cfg.L, "length bound")->envname("AFFSCHUR_L");
    app.add_option("--omega-window", omega_flag, "omega-degree window lo:hi (default -r:r)")->envname("AFFSCHUR_OMEGA_WINDOW");
    app.add_option("--cache", cache_flag, "KL cache file (JSON lines)")->envname("AFFSCHUR_CACHE");
    app.add_option("--format", format_flag, "json, pretty or csv")->envname("AFFSCHUR_FORMAT");
    app.add_option("--seed", cfg.seed, "seed for sampled checks")->envname("AFFSCHUR_SEED");
    app.add_option("--threads", cfg.threads, "scan threads (0: all cores)")->envname("AFFSCHUR_THREADS");

    std::map<std::string, const Command*> by_name;
    for (const auto& c : kCommands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_command_options(*sub, c.name, args);
        by_name[c.name] = &c;
    }

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*r_opt) cfg.r = r_flag;
        if (!omega_flag.empty()) cfg.omega_window = parse_omega_window(omega_flag);
        if (!cache_flag.empty()) cfg.cache_path = cache_flag;
        try {
            cfg.format = output_format_from_string(format_flag);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        check_config(cfg);
        if (cfg.threads > 0) set_scan_threads(cfg.threads);

        const Command* cmd = by_name.at(app.get_subcommands().front()->get_name());
        Session s(cfg, args, err);
        json doc = cmd->run(s);
        s.finish();
        out << render(doc, s.cfg.format);
        return s.status;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UncertifiedAValue& e) {
        err << "uncertified: " << e.what() << "\n";
        return kExitUncertified;
    } catch (const UncertifiedBoundary& e) {
        err << "uncertified: " << e.what() << "\n";
        return kExitUncertified;
    } catch (const WindowExceeded& e) {
        err << "uncertified: " << e.what() << "\n";
        return kExitUncertified;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace affschur
