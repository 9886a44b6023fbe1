#include "affschur/asympt.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <random>
#include <thread>
#include <unordered_map>

#include "affschur/hecke.hpp"
#include "affschur/schur.hpp"

namespace affschur {

namespace {

std::atomic<unsigned> g_scan_threads{0};

// Best degree seen for one z, with the index pair of the first witness.
struct ADegree {
    int deg = -1;
    std::size_t xi = 0, yi = 0;

    void offer(int d, std::size_t i, std::size_t j) {
        if (d > deg || (d == deg && std::pair(i, j) < std::pair(xi, yi))) {
            deg = d;
            xi = i;
            yi = j;
        }
    }
};

struct ATable {
    std::vector<AffPerm> ball;
    std::unordered_map<AffPerm, ADegree, AffPermHash> best;
};

// Scans all C_x C_y with x, y in the W' ball.  Each worker takes a stride of
// rows; the merge uses the same (degree, least pair) rule so the result does
// not depend on the number of threads.
std::mutex g_table_mutex;
std::map<std::pair<int, int>, std::unique_ptr<ATable>> g_tables;

const ATable& a_table(int r, int radius) {
    auto& tables = g_tables;
    std::lock_guard lock(g_table_mutex);
    auto& slot = tables[{r, radius}];
    if (slot) return *slot;

    auto table = std::make_unique<ATable>();
    table->ball = ball(r, radius);
    const auto& b = table->ball;
    const HeckeAlgebra& H = HeckeAlgebra::shared(r);
    const std::size_t N = b.size();
    const unsigned nt = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(scan_threads(), N)));

    std::vector<std::unordered_map<AffPerm, ADegree, AffPermHash>> partial(nt);
    auto work = [&](unsigned k) {
        auto& mine = partial[k];
        for (std::size_t i = k; i < N; i += nt)
            for (std::size_t j = 0; j < N; ++j)
                for (const auto& [z, h] : H.c_product(b[i], b[j]).terms())
                    if (z.length() <= radius) mine[z].offer(h.deg(), i, j);
    };
    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < nt; ++k) pool.emplace_back(work, k);
        for (auto& th : pool) th.join();
    }
    for (const auto& part : partial)
        for (const auto& [z, d] : part) table->best[z].offer(d.deg, d.xi, d.yi);

    slot = std::move(table);
    return *slot;
}

// Coefficient of t^{a(z)} in h, or nullopt when that cannot be decided because
// a(z) is not certified and h reaches the uncertain range.
std::optional<mpz_class> leading_at_a(const LaurentPoly& h, const AffPerm& z, int L) {
    if (h.is_zero()) return mpz_class(0);
    AValue av = a_bounded(z, L);
    if (h.deg() < av.value) return mpz_class(0);
    if (!av.certified) return std::nullopt;
    return h.coeff(av.value);
}

std::string uncertified_message(const AffPerm& z, int L) {
    return "a(" + z.to_string() + ") is not certified at radius " + std::to_string(L);
}

}  // namespace

void set_scan_threads(unsigned n) { g_scan_threads.store(n); }

void reset_a_tables() {
    std::lock_guard lock(g_table_mutex);
    g_tables.clear();
}

unsigned scan_threads() {
    unsigned n = g_scan_threads.load();
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

int delta_small(const AffPerm& z) {
    LaurentPoly p = kl_poly(AffPerm::rho_pow(z.period(), z.omega_degree()), z);
    return p.deg() / 2;
}

int delta_cap(const AffPerm& z) { return z.length() - 2 * delta_small(z); }

AValue a_bounded(const AffPerm& z, int L) {
    const int r = z.period();
    const long k = z.omega_degree();
    const AffPerm zc = z.coxeter_part();
    const int radius = std::max({L, zc.length(), 0});
    const ATable& table = a_table(r, radius);
    auto it = table.best.find(zc);
    if (it == table.best.end()) throw Error("a-function scan missed " + zc.to_string());

    AValue out;
    out.value = it->second.deg;
    out.witness = std::pair(table.ball[it->second.xi].rho_shifted(k), table.ball[it->second.yi]);
    const int cap = delta_cap(z);
    out.upper_bound = std::min(nu_ceiling(r), cap);
    out.certified = out.value == nu_ceiling(r) || out.value == cap;
    return out;
}

AValue a_matrix(const PeriodicMatrix& a, int L) { return a_bounded(sigma_plus(a), L); }

std::vector<AffPerm> distinguished_involutions(int r, int L) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<AffPerm>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find({r, L});
        if (it != cache.end()) return it->second;
    }
    std::vector<AffPerm> out;
    for (const auto& z : ball(r, L)) {
        if (!(z * z).is_identity()) continue;
        AValue av = a_bounded(z, L);
        if (!av.certified)
            throw UncertifiedBoundary("cannot decide whether " + z.to_string() + " is distinguished at radius " +
                                      std::to_string(L));
        if (av.value == delta_cap(z)) out.push_back(z);
    }
    canonical_sort(out);
    std::lock_guard lock(mutex);
    cache.emplace(std::pair(r, L), out);
    return out;
}

std::vector<PeriodicMatrix> distinguished_matrices(const Composition& mu, int L) {
    std::vector<PeriodicMatrix> out;
    for (const auto& d : distinguished_involutions(mu.r(), L))
        if (is_max_double_rep(d, mu, mu)) out.push_back(matrix_of_triple(CosetTriple(mu, min_double_rep(d, mu, mu), mu)));
    theta_sort(out);
    return out;
}

std::vector<PeriodicMatrix> distinguished_matrices(int n, int r, int L) {
    std::vector<PeriodicMatrix> out;
    for (const auto& mu : Composition::all(n, r)) {
        auto part = distinguished_matrices(mu, L);
        out.insert(out.end(), part.begin(), part.end());
    }
    theta_sort(out);
    return out;
}

mpz_class gamma(const AffPerm& x, const AffPerm& y, const AffPerm& z, int L) {
    AValue av = a_bounded(z, L);
    if (!av.certified) throw UncertifiedAValue(uncertified_message(z, L));
    return h_struct(x, y, z).coeff(av.value);
}

mpz_class gamma_mat(const PeriodicMatrix& a, const PeriodicMatrix& b, const PeriodicMatrix& c, int L) {
    if (a.co() != b.ro() || c.ro() != a.ro() || c.co() != b.co()) return 0;
    if (theta_product(a, b).coeff(c).is_zero()) return 0;
    return gamma(sigma_plus(a), sigma_plus(b), sigma_plus(c), L);
}

JWElt j_basis_product(const AffPerm& x, const AffPerm& y, int L) {
    if (x.period() != y.period()) throw PeriodMismatch(x.period(), y.period());
    JWElt out;
    for (const auto& [z, h] : HeckeAlgebra::shared(x.period()).c_product(x, y).terms()) {
        auto g = leading_at_a(h, z, L);
        if (!g) throw UncertifiedAValue(uncertified_message(z, L));
        out.add(z, *g);
    }
    return out;
}

JSchurElt j_basis_product(const PeriodicMatrix& a, const PeriodicMatrix& b, int L) {
    JSchurElt out;
    if (a.co() != b.ro()) return out;
    const Composition lambda = a.ro(), nu = b.co();
    const auto& prod = HeckeAlgebra::shared(a.r()).c_product(sigma_plus(a), sigma_plus(b));
    for (const auto& [z, h] : prod.terms()) {
        auto g = leading_at_a(h, z, L);
        if (!g) throw UncertifiedAValue(uncertified_message(z, L));
        if (*g == 0) continue;
        out.add(matrix_of_triple(CosetTriple(lambda, min_double_rep(z, lambda, nu), nu)), *g);
    }
    return out;
}

JWElt j_identity_w(int r, int L) {
    JWElt out;
    for (const auto& d : distinguished_involutions(r, L)) out.add(d, 1);
    return out;
}

JSchurElt j_identity_schur(int n, int r, int L) {
    JSchurElt out;
    for (const auto& d : distinguished_matrices(n, r, L)) out.add(d, 1);
    return out;
}

JWPoly lusztig_phi_hecke(const AffPerm& w, int L) {
    const HeckeAlgebra& H = HeckeAlgebra::shared(w.period());
    JWPoly out;
    for (const auto& d : distinguished_involutions(w.period(), L)) {
        const int ad = a_bounded(d, L).value;
        for (const auto& [u, h] : H.c_product(w, d).terms()) {
            AValue au = a_bounded(u, L);
            if (!au.certified) throw UncertifiedAValue(uncertified_message(u, L));
            if (au.value == ad) out.add(u, h);
        }
    }
    return out;
}

JSchurPoly lusztig_phi_schur(const PeriodicMatrix& a, int L) {
    JSchurPoly out;
    for (const auto& d : distinguished_matrices(a.co(), L)) {
        const int ad = a_matrix(d, L).value;
        for (const auto& [b, g] : theta_product(a, d).terms()) {
            AValue ab = a_matrix(b, L);
            if (!ab.certified) throw UncertifiedAValue(uncertified_message(sigma_plus(b), L));
            if (ab.value == ad) out.add(b, g);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(CellFlavor f) {
    switch (f) {
        case CellFlavor::L: return "L";
        case CellFlavor::R: return "R";
        case CellFlavor::LR: return "LR";
    }
    return "?";
}

CellFlavor cell_flavor_from_string(const std::string& s) {
    if (s == "L" || s == "left") return CellFlavor::L;
    if (s == "R" || s == "right") return CellFlavor::R;
    if (s == "LR" || s == "two-sided") return CellFlavor::LR;
    throw DomainError("unknown cell flavor '" + s + "'");
}

namespace {

template <class Key>
void close_and_partition(CellReport<Key>& rep, const std::vector<bool>& boundary) {
    const std::size_t N = rep.elements.size();
    std::sort(rep.edges.begin(), rep.edges.end());
    rep.edges.erase(std::unique(rep.edges.begin(), rep.edges.end()), rep.edges.end());
    std::vector<std::vector<std::size_t>> out(N);
    for (auto [a, b] : rep.edges) out[a].push_back(b);
    rep.reach.assign(N, std::vector<bool>(N, false));
    for (std::size_t s = 0; s < N; ++s) {
        auto& seen = rep.reach[s];
        std::queue<std::size_t> todo;
        seen[s] = true;
        todo.push(s);
        while (!todo.empty()) {
            std::size_t v = todo.front();
            todo.pop();
            for (std::size_t w : out[v])
                if (!seen[w]) {
                    seen[w] = true;
                    todo.push(w);
                }
        }
    }
    std::vector<bool> placed(N, false);
    for (std::size_t i = 0; i < N; ++i) {
        if (placed[i]) continue;
        std::vector<Key> cell;
        for (std::size_t j = i; j < N; ++j)
            if (!placed[j] && rep.reach[i][j] && rep.reach[j][i]) {
                placed[j] = true;
                cell.push_back(rep.elements[j]);
            }
        rep.cells.push_back(std::move(cell));
    }
    for (std::size_t i = 0; i < N; ++i)
        if (boundary[i]) rep.boundary.push_back(rep.elements[i]);
    rep.caveats.push_back("preorder restricted to a finite window of " + std::to_string(N) +
                          " elements; cells are window-local");
    if (!rep.boundary.empty())
        rep.caveats.push_back(std::to_string(rep.boundary.size()) +
                              " elements have product terms outside the window; their cells may merge further");
}

}  // namespace

CellReport<PeriodicMatrix> cell_preorder(const std::vector<PeriodicMatrix>& window, CellFlavor flavor) {
    CellReport<PeriodicMatrix> rep;
    rep.flavor = flavor;
    rep.elements = window;
    theta_sort(rep.elements);
    rep.elements.erase(std::unique(rep.elements.begin(), rep.elements.end()), rep.elements.end());
    if (!rep.elements.empty())
        rep.window = "theta window n=" + std::to_string(rep.elements[0].n()) + " r=" +
                     std::to_string(rep.elements[0].r()) + " size=" + std::to_string(rep.elements.size());
    std::map<PeriodicMatrix, std::size_t> index;
    for (std::size_t i = 0; i < rep.elements.size(); ++i) index.emplace(rep.elements[i], i);
    std::vector<bool> boundary(rep.elements.size(), false);

    auto record = [&](const SchurElt& prod, std::size_t j) {
        for (const auto& [a, g] : prod.terms()) {
            auto it = index.find(a);
            if (it == index.end())
                boundary[j] = true;
            else
                rep.edges.emplace_back(it->second, j);
        }
    };
    for (std::size_t j = 0; j < rep.elements.size(); ++j) {
        const auto& b = rep.elements[j];
        for (const auto& c : rep.elements) {
            if (flavor != CellFlavor::R && c.co() == b.ro()) record(theta_product(c, b), j);
            if (flavor != CellFlavor::L && b.co() == c.ro()) record(theta_product(b, c), j);
        }
    }
    close_and_partition(rep, boundary);
    return rep;
}

CellReport<AffPerm> hecke_cell_preorder(const std::vector<AffPerm>& window, CellFlavor flavor) {
    CellReport<AffPerm> rep;
    rep.flavor = flavor;
    rep.elements = window;
    canonical_sort(rep.elements);
    rep.elements.erase(std::unique(rep.elements.begin(), rep.elements.end()), rep.elements.end());
    if (rep.elements.empty()) return rep;
    const int r = rep.elements[0].period();
    rep.window = "Hecke window r=" + std::to_string(r) + " size=" + std::to_string(rep.elements.size());
    std::map<AffPerm, std::size_t> index;
    for (std::size_t i = 0; i < rep.elements.size(); ++i) index.emplace(rep.elements[i], i);
    std::vector<bool> boundary(rep.elements.size(), false);
    const HeckeAlgebra& H = HeckeAlgebra::shared(r);

    auto record = [&](const HeckeElt& prod, std::size_t j) {
        for (const auto& [z, h] : prod.terms()) {
            auto it = index.find(z);
            if (it == index.end())
                boundary[j] = true;
            else
                rep.edges.emplace_back(it->second, j);
        }
    };
    for (std::size_t j = 0; j < rep.elements.size(); ++j)
        for (const auto& x : rep.elements) {
            if (flavor != CellFlavor::R) record(H.c_product(x, rep.elements[j]), j);
            if (flavor != CellFlavor::L) record(H.c_product(rep.elements[j], x), j);
        }
    close_and_partition(rep, boundary);
    return rep;
}

bool hecke_left_equiv(const AffPerm& y, const AffPerm& w, int L) {
    return !j_basis_product(y, w.inverse(), L).is_zero();
}

bool schur_left_equiv(const PeriodicMatrix& a, const PeriodicMatrix& b, int L) {
    return !j_basis_product(a, b.transpose(), L).is_zero();
}

bool schur_right_equiv(const PeriodicMatrix& a, const PeriodicMatrix& b, int L) {
    return !j_basis_product(a.transpose(), b, L).is_zero();
}

CellReport<PeriodicMatrix> lowest_cell(int n, int r, const std::vector<PeriodicMatrix>& window, int L) {
    CellReport<PeriodicMatrix> rep;
    rep.flavor = CellFlavor::L;
    rep.window = "lowest two-sided cell n=" + std::to_string(n) + " r=" + std::to_string(r);
    std::vector<PeriodicMatrix> elems = window;
    theta_sort(elems);
    for (const auto& a : elems) {
        if (a.n() != n || a.r() != r) throw DomainError("window element " + a.to_string() + " has the wrong shape");
        AValue av = a_matrix(a, L);
        if (!av.certified) throw UncertifiedAValue(uncertified_message(sigma_plus(a), L));
        if (av.value == nu_ceiling(r)) rep.elements.push_back(a);
    }
    const std::size_t N = rep.elements.size();
    std::vector<std::size_t> parent(N);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            if (find(i) == find(j)) continue;
            const auto &a = rep.elements[i], &b = rep.elements[j];
            if (a.co() == b.co() && hecke_left_equiv(sigma_plus(a), sigma_plus(b), L)) parent[find(j)] = find(i);
        }
    rep.reach.assign(N, std::vector<bool>(N, false));
    std::map<std::size_t, std::vector<PeriodicMatrix>> groups;
    for (std::size_t i = 0; i < N; ++i) {
        groups[find(i)].push_back(rep.elements[i]);
        for (std::size_t j = 0; j < N; ++j) rep.reach[i][j] = find(i) == find(j);
    }
    for (auto& [root, cell] : groups) rep.cells.push_back(std::move(cell));
    rep.caveats.push_back("members are the window elements with certified a = " + std::to_string(nu_ceiling(r)) +
                          "; left cells counted among them only");
    return rep;
}

// ---------------------------------------------------------------------------

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
        case CheckStatus::Absent: return "absent-in-paper";
    }
    return "?";
}

namespace {

using PM = PeriodicMatrix;

// Window data shared by the based-ring checks and the Q-suite.  J-products are
// cached; an uncertified product is remembered as nullopt.
class SuiteData {
public:
    explicit SuiteData(const SuiteOptions& opt)
        : opt_(opt), window_(enumerate_theta(opt.n, opt.r, opt.L, opt.omega)),
          dd_(distinguished_matrices(opt.n, opt.r, opt.L)) {
        in_window_.insert(window_.begin(), window_.end());
        dd_set_.insert(dd_.begin(), dd_.end());
    }

    const std::vector<PM>& window() const { return window_; }
    const std::vector<PM>& dd() const { return dd_; }
    bool is_dd(const PM& a) const { return dd_set_.count(a) > 0; }
    int L() const { return opt_.L; }

    const std::optional<JSchurElt>& jp(const PM& a, const PM& b) {
        auto key = std::pair(a, b);
        auto it = jcache_.find(key);
        if (it != jcache_.end()) return it->second;
        std::optional<JSchurElt> val;
        try {
            val = j_basis_product(a, b, opt_.L);
        } catch (const UncertifiedAValue&) {
        }
        return jcache_.emplace(std::move(key), std::move(val)).first->second;
    }

    /// gamma_{A,B,C} or nullopt when uncertified.
    std::optional<mpz_class> gamma(const PM& a, const PM& b, const PM& c) {
        const auto& p = jp(a, b);
        if (!p) return std::nullopt;
        return p->coeff(c);
    }

    const AValue& aval(const PM& a) {
        auto it = acache_.find(a);
        if (it != acache_.end()) return it->second;
        return acache_.emplace(a, a_matrix(a, opt_.L)).first->second;
    }

    std::optional<bool> left_equiv(const PM& a, const PM& b) {
        const auto& p = jp(a, b.transpose());
        if (!p) return std::nullopt;
        return !p->is_zero();
    }
    std::optional<bool> right_equiv(const PM& a, const PM& b) {
        const auto& p = jp(a.transpose(), b);
        if (!p) return std::nullopt;
        return !p->is_zero();
    }

    const CellReport<PM>& preorder(CellFlavor f) {
        auto it = preorders_.find(f);
        if (it == preorders_.end()) it = preorders_.emplace(f, cell_preorder(window_, f)).first;
        return it->second;
    }

private:
    SuiteOptions opt_;
    std::vector<PM> window_;
    std::vector<PM> dd_;
    std::set<PM> in_window_;
    std::set<PM> dd_set_;
    std::map<std::pair<PM, PM>, std::optional<JSchurElt>> jcache_;
    std::map<PM, AValue> acache_;
    std::map<CellFlavor, CellReport<PM>> preorders_;
};

std::string triple_str(const PM& a, const PM& b, const PM& c) {
    return "A=" + a.to_string() + " B=" + b.to_string() + " C=" + c.to_string();
}

CheckResult check_cyclic(SuiteData& data, const std::string& name) {
    CheckResult res{name};
    for (const auto& a : data.window())
        for (const auto& b : data.window()) {
            if (a.co() != b.ro()) continue;
            const auto& p = data.jp(a, b);
            if (!p) {
                res.skip();
                continue;
            }
            for (const auto& [c, g] : p->terms()) {
                auto g1 = data.gamma(b, c.transpose(), a.transpose());
                auto g2 = data.gamma(c.transpose(), a, b.transpose());
                if (!g1 || !g2) {
                    res.skip();
                    continue;
                }
                if (*g1 == g && *g2 == g)
                    res.pass();
                else
                    res.fail(triple_str(a, b, c) + " gamma=" + g.get_str() + " rotated " + g1->get_str() + ", " +
                             g2->get_str());
            }
        }
    res.finish();
    return res;
}

// A ~_LR B: first through chains of exact ~_L / ~_R relations inside the
// window, then through a search for t_A t_C t_B != 0 with C in the window.
class LRClasses {
public:
    explicit LRClasses(SuiteData& data) : data_(data) {
        const auto& w = data.window();
        parent_.resize(w.size());
        std::iota(parent_.begin(), parent_.end(), 0);
        for (std::size_t i = 0; i < w.size(); ++i) index_.emplace(w[i], i);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                if (find(i) == find(j)) continue;
                if (data.left_equiv(w[i], w[j]).value_or(false) || data.right_equiv(w[i], w[j]).value_or(false))
                    parent_[find(j)] = find(i);
            }
    }

    /// true, false, or nullopt when undecided inside the window.
    std::optional<bool> equiv(const PM& a, const PM& b) {
        auto ia = index_.find(a), ib = index_.find(b);
        if (ia != index_.end() && ib != index_.end() && find(ia->second) == find(ib->second)) return true;
        for (const auto& c : data_.window()) {
            if (a.co() != c.ro() || c.co() != b.ro()) continue;
            const auto& ac = data_.jp(a, c);
            if (!ac) return std::nullopt;
            for (const auto& [x, g] : ac->terms()) {
                const auto& xb = data_.jp(x, b);
                if (!xb) return std::nullopt;
                if (!xb->is_zero()) return true;
            }
        }
        return std::nullopt;
    }

private:
    std::size_t find(std::size_t i) { return parent_[i] == i ? i : parent_[i] = find(parent_[i]); }

    SuiteData& data_;
    std::vector<std::size_t> parent_;
    std::map<PM, std::size_t> index_;
};

// Evaluates sum_{B'} g'_{C,A',B'} g_{A,B',B} and sum_{B'} g_{A,C,B'} g'_{B',A',B}
// with v' = k, for every B on either side.
using SideMap = std::map<PM, RationalLaurent>;

void q15_sides(const PM& a, const PM& c, const PM& a2, long k, SideMap& lhs, SideMap& rhs) {
    const mpq_class kk(k);
    for (const auto& [b1, g1] : theta_product(c, a2).terms()) {
        mpq_class v1 = evaluate(g1, kk);
        for (const auto& [b, g2] : theta_product(a, b1).terms()) lhs[b] += v1 * to_rational(g2);
    }
    for (const auto& [b1, g1] : theta_product(a, c).terms()) {
        RationalLaurent r1 = to_rational(g1);
        for (const auto& [b, g2] : theta_product(b1, a2).terms()) rhs[b] += evaluate(g2, kk) * r1;
    }
}

// Exponent range in v' over every primed constant that enters the identity.
std::pair<int, int> q15_primed_range(const PM& a, const PM& c, const PM& a2) {
    int lo = 0, hi = 0;
    auto widen = [&](const LaurentPoly& p) {
        lo = std::min(lo, p.low_deg());
        hi = std::max(hi, p.deg());
    };
    for (const auto& [b1, g1] : theta_product(c, a2).terms()) widen(g1);
    for (const auto& [b1, g1] : theta_product(a, c).terms())
        for (const auto& [b, g2] : theta_product(b1, a2).terms()) widen(g2);
    return {lo, hi};
}

CheckResult check_q15(SuiteData& data, const SuiteOptions& opt) {
    CheckResult res{"Q15"};
    const auto& w = data.window();
    std::mt19937_64 rng(opt.seed);
    long free_hold = 0, free_fail = 0;
    if (w.empty()) {
        res.finish();
        return res;
    }
    std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
    auto pick_with_ro = [&](const Composition& ro) -> std::optional<PM> {
        std::vector<const PM*> pool;
        for (const auto& x : w)
            if (x.ro() == ro) pool.push_back(&x);
        if (pool.empty()) return std::nullopt;
        std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
        return *pool[d(rng)];
    };
    for (int s = 0; s < opt.q15_samples; ++s) {
        const PM a = w[pick(rng)];
        auto c = pick_with_ro(a.co());
        if (!c) continue;
        auto a2 = pick_with_ro(c->co());
        if (!a2) continue;
        const AValue& ac = data.aval(*c);
        if (!ac.certified) {
            res.skip();
            continue;
        }
        auto [lo, hi] = q15_primed_range(a, *c, *a2);
        const int points = std::max(3, hi - lo + 1);
        std::map<PM, bool> agree;
        for (int i = 0; i < points; ++i) {
            SideMap lhs, rhs;
            q15_sides(a, *c, *a2, 2 + i, lhs, rhs);
            for (auto& [b, v] : lhs) {
                bool eq = v == rhs[b];
                auto [it, fresh] = agree.try_emplace(b, eq);
                if (!fresh) it->second = it->second && eq;
            }
            for (auto& [b, v] : rhs) {
                bool eq = lhs[b] == v;
                auto [it, fresh] = agree.try_emplace(b, eq);
                if (!fresh) it->second = it->second && eq;
            }
        }
        for (const auto& [b, ok] : agree) {
            const AValue& ab = data.aval(b);
            if (!ab.certified) {
                res.skip();
                continue;
            }
            if (ab.value != ac.value) {
                (ok ? free_hold : free_fail)++;
                continue;
            }
            if (ok)
                res.pass();
            else
                res.fail("A=" + a.to_string() + " A'=" + a2->to_string() + " B=" + b.to_string() + " C=" +
                         c->to_string());
        }
    }
    res.note = "without the a(C) = a(B) hypothesis: " + std::to_string(free_hold) + " instances hold, " +
               std::to_string(free_fail) + " fail";
    res.finish();
    return res;
}

}  // namespace

std::vector<CheckResult> based_ring_checks(const SuiteOptions& opt) {
    SuiteData data(opt);
    const auto& w = data.window();
    const int L = opt.L;
    std::vector<CheckResult> out;

    CheckResult nonneg{"nonnegative-integer-constants"};
    CheckResult tau{"tau-pairing"};
    CheckResult anti{"transpose-anti-automorphism"};
    for (const auto& a : w)
        for (const auto& b : w) {
            if (a.co() != b.ro()) continue;
            const auto& p = data.jp(a, b);
            if (!p) {
                nonneg.skip();
                tau.skip();
                anti.skip();
                continue;
            }
            bool ok = true;
            mpz_class t = 0;
            for (const auto& [c, g] : p->terms()) {
                if (g < 0) ok = false;
                if (data.is_dd(c)) t += g;
            }
            if (ok)
                nonneg.pass();
            else
                nonneg.fail("A=" + a.to_string() + " B=" + b.to_string());
            if (t == (b == a.transpose() ? 1 : 0))
                tau.pass();
            else
                tau.fail("A=" + a.to_string() + " B=" + b.to_string() + " tau=" + t.get_str());
            const auto& q = data.jp(b.transpose(), a.transpose());
            if (!q) {
                anti.skip();
                continue;
            }
            JSchurElt flipped;
            for (const auto& [c, g] : p->terms()) flipped.add(c.transpose(), g);
            if (flipped == *q)
                anti.pass();
            else
                anti.fail("A=" + a.to_string() + " B=" + b.to_string());
        }

    CheckResult ident{"identity-is-sum-of-basis"};
    try {
        JSchurElt one = j_identity_schur(opt.n, opt.r, L);
        for (const auto& [d, c] : one.terms())
            if (c != 1) ident.fail("coefficient of " + d.to_string());
        if (j_mul(one, one, L) == one)
            ident.pass();
        else
            ident.fail("identity is not idempotent");
        for (const auto& a : w) {
            JSchurElt ta = JSchurElt::basis_elt(a);
            if (j_mul(one, ta, L) == ta && j_mul(ta, one, L) == ta)
                ident.pass();
            else
                ident.fail("A=" + a.to_string());
        }
    } catch (const UncertifiedAValue&) {
        ident.skip();
    }

    for (auto* c : {&nonneg, &ident, &tau, &anti}) {
        c->finish();
        out.push_back(*c);
    }
    out.push_back(check_cyclic(data, "cyclic-symmetry"));
    return out;
}

std::vector<CheckResult> q_suite(const SuiteOptions& opt) {
    SuiteData data(opt);
    const auto& w = data.window();
    const auto& dd = data.dd();
    std::vector<CheckResult> out;
    auto finish = [&](CheckResult& c) {
        c.finish();
        out.push_back(c);
    };

    CheckResult q1{"Q1"};
    for (const auto& a : w) {
        const AValue& av = data.aval(a);
        const int cap = delta_cap(sigma_plus(a));
        if (av.value > cap)
            q1.fail("A=" + a.to_string() + " a>=" + std::to_string(av.value) + " Delta=" + std::to_string(cap));
        else if (av.certified)
            q1.pass();
        else
            q1.skip();
    }
    finish(q1);

    CheckResult q2{"Q2"};
    for (const auto& a : w)
        for (const auto& b : w) {
            if (a.co() != b.ro()) continue;
            const auto& p = data.jp(a, b);
            if (!p) {
                q2.skip();
                continue;
            }
            bool bad = false;
            for (const auto& [c, g] : p->terms())
                if (data.is_dd(c) && b != a.transpose()) bad = true;
            if (bad)
                q2.fail("A=" + a.to_string() + " B=" + b.to_string());
            else
                q2.pass();
        }
    finish(q2);

    CheckResult q3{"Q3"}, q5{"Q5"};
    for (const auto& a : w) {
        const auto& p = data.jp(a.transpose(), a);
        if (!p) {
            q3.skip();
            q5.skip();
            continue;
        }
        int hits = 0;
        bool ones = true;
        for (const auto& d : dd) {
            mpz_class g = p->coeff(d);
            if (g != 0) {
                ++hits;
                if (g != 1) ones = false;
            }
        }
        if (hits == 1)
            q3.pass();
        else
            q3.fail("A=" + a.to_string() + " has " + std::to_string(hits) + " distinguished targets");
        if (ones)
            q5.pass();
        else
            q5.fail("A=" + a.to_string());
    }

    CheckResult q4{"Q4"};
    {
        const auto& rep = data.preorder(CellFlavor::LR);
        for (std::size_t i = 0; i < rep.elements.size(); ++i)
            for (std::size_t j = 0; j < rep.elements.size(); ++j) {
                if (i == j || !rep.reach[i][j]) continue;
                const AValue &ai = data.aval(rep.elements[i]), &aj = data.aval(rep.elements[j]);
                if (!ai.certified || !aj.certified) {
                    q4.skip();
                    continue;
                }
                if (ai.value >= aj.value)
                    q4.pass();
                else
                    q4.fail("A=" + rep.elements[i].to_string() + " B=" + rep.elements[j].to_string());
            }
    }
    finish(q3);
    finish(q4);
    finish(q5);

    CheckResult q6{"Q6"};
    for (const auto& d : dd) {
        if (d == d.transpose())
            q6.pass();
        else
            q6.fail("D=" + d.to_string());
    }
    finish(q6);

    out.push_back(check_cyclic(data, "Q7"));

    CheckResult q8{"Q8"};
    for (const auto& a : w)
        for (const auto& b : w) {
            if (a.co() != b.ro()) continue;
            const auto& p = data.jp(a, b);
            if (!p) {
                q8.skip();
                continue;
            }
            for (const auto& [c, g] : p->terms()) {
                auto l1 = data.left_equiv(a, b.transpose());
                auto l2 = data.left_equiv(b, c);
                auto r1 = data.right_equiv(a, c);
                if (!l1 || !l2 || !r1) {
                    q8.skip();
                    continue;
                }
                if (*l1 && *l2 && *r1)
                    q8.pass();
                else
                    q8.fail(triple_str(a, b, c));
            }
        }
    finish(q8);

    LRClasses lr(data);
    auto preorder_check = [&](const std::string& name, CellFlavor f) {
        CheckResult res{name};
        const auto& rep = data.preorder(f);
        for (std::size_t i = 0; i < rep.elements.size(); ++i)
            for (std::size_t j = 0; j < rep.elements.size(); ++j) {
                if (i == j || !rep.reach[i][j]) continue;
                const auto &a = rep.elements[i], &b = rep.elements[j];
                const AValue &aa = data.aval(a), &ab = data.aval(b);
                if (!aa.certified || !ab.certified) {
                    res.skip();
                    continue;
                }
                if (aa.value != ab.value) continue;
                std::optional<bool> eq;
                if (f == CellFlavor::L)
                    eq = data.left_equiv(a, b);
                else if (f == CellFlavor::R)
                    eq = data.right_equiv(a, b);
                else
                    eq = lr.equiv(a, b);
                if (!eq)
                    res.skip();
                else if (*eq)
                    res.pass();
                else
                    res.fail("A=" + a.to_string() + " B=" + b.to_string());
            }
        finish(res);
    };
    preorder_check("Q9", CellFlavor::L);
    preorder_check("Q10", CellFlavor::R);
    preorder_check("Q11", CellFlavor::LR);

    CheckResult q12{"Q12"};
    q12.status = CheckStatus::Absent;
    q12.note = "the property list has no Q12";
    out.push_back(q12);

    CheckResult q13{"Q13"};
    for (const auto& a : w) {
        std::vector<PM> found;
        bool undecided = false;
        for (const auto& d : dd) {
            if (d.ro() != a.co()) continue;
            auto eq = data.left_equiv(a, d);
            if (!eq)
                undecided = true;
            else if (*eq)
                found.push_back(d);
        }
        if (undecided) {
            q13.skip();
            continue;
        }
        if (found.size() != 1) {
            q13.fail("A=" + a.to_string() + " is left-equivalent to " + std::to_string(found.size()) +
                     " distinguished elements");
            continue;
        }
        auto g = data.gamma(a.transpose(), a, found[0]);
        if (!g)
            q13.skip();
        else if (*g != 0)
            q13.pass();
        else
            q13.fail("A=" + a.to_string() + " D=" + found[0].to_string() + " gamma=0");
    }
    for (std::size_t i = 0; i < dd.size(); ++i)
        for (std::size_t j = i + 1; j < dd.size(); ++j) {
            auto eq = data.left_equiv(dd[i], dd[j]);
            if (!eq)
                q13.skip();
            else if (*eq)
                q13.fail("D=" + dd[i].to_string() + " ~L D'=" + dd[j].to_string());
            else
                q13.pass();
        }
    finish(q13);

    CheckResult q14{"Q14"};
    for (const auto& a : w) {
        auto eq = lr.equiv(a, a.transpose());
        if (!eq)
            q14.skip();
        else if (*eq)
            q14.pass();
        else
            q14.fail("A=" + a.to_string());
    }
    finish(q14);

    CheckResult q15 = check_q15(data, opt);
    out.push_back(q15);
    return out;
}

}  // namespace affschur
