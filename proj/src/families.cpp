#include "leibniz/families.hpp"

#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace leibniz {

namespace {

[[noreturn]] void reject(const std::string& id, long n, const std::string& why) {
    throw std::invalid_argument("family " + id + " (n=" + std::to_string(n) + "): " + why);
}

// Parameter access with arity checking: every supplied name must be consumed.
class Params {
public:
    Params(const FamilySpec& s) : spec_(s) {}  // NOLINT
    Rational get(const std::string& name) {
        used_.insert(name);
        auto it = spec_.params.find(name);
        return it == spec_.params.end() ? Rational(0) : it->second;
    }
    bool has(const std::string& name) const { return spec_.params.count(name) != 0; }
    long integer(const std::string& name) {
        if (!has(name)) reject(spec_.id, spec_.n, "missing required parameter '" + name + "'");
        Rational v = get(name);
        if (!v.is_integer()) reject(spec_.id, spec_.n, "parameter '" + name + "' must be an integer");
        return v.num().get_si();
    }
    void finish() const {
        for (const auto& [k, v] : spec_.params)
            if (!used_.count(k)) reject(spec_.id, spec_.n, "unknown parameter '" + k + "' (see catalog)");
    }

private:
    const FamilySpec& spec_;
    std::set<std::string> used_;
};

struct Builder {
    Tensor t;
    explicit Builder(std::size_t dim) : t(dim) {}
    void set(long i, long j, long k, const Rational& c) {
        t.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = c;
    }
    // [e_i,e_j] = c e_k and [e_j,e_i] = -c e_k
    void anti(long i, long j, long k, const Rational& c) {
        set(i, j, k, c);
        set(j, i, k, -c);
    }
};

Rational sgn_pow(long i) { return (i % 2 == 0) ? Rational(1) : Rational(-1); }

std::vector<std::string> labels_for(long n, bool with_x) {
    std::vector<std::string> l;
    for (long i = 0; i <= n; ++i) l.push_back("e" + std::to_string(i));
    if (with_x) l.push_back("x");
    return l;
}

void fill_F1(Builder& b, long n, const std::vector<Rational>& alpha /* index k */, const Rational& theta) {
    auto al = [&](long k) { return (k >= 3 && k <= n) ? alpha[static_cast<std::size_t>(k)] : Rational(0); };
    b.set(0, 0, 2, 1);
    for (long i = 1; i <= n - 1; ++i) b.set(i, 0, i + 1, 1);
    for (long k = 3; k <= n - 1; ++k) b.set(0, 1, k, al(k));
    b.set(0, 1, n, theta);
    for (long i = 1; i <= n - 2; ++i)
        for (long k = i + 2; k <= n; ++k) b.set(i, 1, k, al(k + 1 - i));
}

void fill_F2(Builder& b, long n, const std::vector<Rational>& beta, const Rational& gamma) {
    auto be = [&](long k) { return (k >= 3 && k <= n) ? beta[static_cast<std::size_t>(k)] : Rational(0); };
    b.set(0, 0, 2, 1);
    for (long i = 2; i <= n - 1; ++i) b.set(i, 0, i + 1, 1);
    for (long k = 3; k <= n; ++k) b.set(0, 1, k, be(k));
    b.set(1, 1, n, gamma);
    for (long i = 2; i <= n - 2; ++i)
        for (long k = i + 2; k <= n; ++k) b.set(i, 1, k, be(k + 1 - i));
}

void fill_F3(Builder& b, long n, const Rational& t1, const Rational& t2, const Rational& t3, const Rational& alpha) {
    for (long i = 1; i <= n - 1; ++i) b.set(i, 0, i + 1, 1);
    for (long i = 2; i <= n - 1; ++i) b.set(0, i, i + 1, -1);
    b.set(0, 0, n, t1);
    b.set(0, 1, 2, -1);
    b.set(0, 1, n, t2);
    b.set(1, 1, n, t3);
    if (!alpha.is_zero())
        for (long i = 1; i <= n - 1; ++i) b.set(i, n - i, n, alpha * sgn_pow(i));
}

void fill_Ln(Builder& b, long n) {
    for (long i = 1; i <= n - 1; ++i) b.anti(0, i, i + 1, 1);
}

// the bracket [e_i,e_n-i] = (-1)^i e_n: set both orders explicitly
void fill_Qtail(Builder& b, long n) {
    for (long i = 1; i <= n - 1; ++i) b.set(i, n - i, n, sgn_pow(i));
}

Rational ab_coef(long i, long j, const std::vector<Rational>& alphas, long t) {
    Rational s(0);
    for (long k = i; k <= t; ++k) {
        const Rational& a = alphas[static_cast<std::size_t>(k - 1)];
        if (a.is_zero()) continue;
        s += sgn_pow(k - i) * a * binomial(j - k - 1, k - i);
    }
    return s;
}

void fill_A(Builder& b, long n, long r, const std::vector<Rational>& alphas) {
    const long t = family_t("A", n, r);
    fill_Ln(b, n);
    for (long i = 1; i <= n - 2; ++i)
        for (long j = i + 1; j <= n - 2; ++j)
            if (i + j + r <= n) {
                Rational c = ab_coef(i, j, alphas, t);
                if (!c.is_zero()) b.anti(i, j, i + j + r, c);
            }
}

void fill_B(Builder& b, long n, long r, const std::vector<Rational>& alphas) {
    const long t = family_t("B", n, r);
    for (long i = 1; i <= n - 2; ++i) b.anti(0, i, i + 1, 1);
    fill_Qtail(b, n);
    for (long i = 1; i <= n - 1; ++i)
        for (long j = i + 1; j <= n - 1; ++j)
            if (i + j + r <= n - 1) {
                Rational c = ab_coef(i, j, alphas, t);
                if (!c.is_zero()) b.anti(i, j, i + j + r, c);
            }
}

std::vector<Rational> read_alphas(Params& p, long t) {
    std::vector<Rational> al;
    for (long k = 1; k <= t; ++k) al.push_back(p.get("alpha" + std::to_string(k)));
    return al;
}

void need_nonzero_alpha(const std::string& id, long n, const std::vector<Rational>& al) {
    for (const auto& a : al)
        if (!a.is_zero()) return;
    reject(id, n, "at least one alpha_i must be nonzero");
}

Algebra finish(Builder& b, const FamilySpec& spec, bool with_x) {
    Metadata md{spec.id, spec.n, {spec.params.begin(), spec.params.end()}};
    Algebra a(std::move(b.t), labels_for(spec.n, with_x), md);
    auto rep = leibniz_check(a);
    if (!rep.pass()) {
        const auto& f = rep.failures.front();
        std::ostringstream os;
        os << "table violates the Leibniz identity at (" << a.labels()[f.i] << "," << a.labels()[f.j] << ","
           << a.labels()[f.k] << "); " << rep.failures.size() << " failing triples";
        throw std::runtime_error("family " + spec.id + " (n=" + std::to_string(spec.n) + "): " + os.str());
    }
    return a;
}

void check_parity(const FamilyInfo& info, long n) {
    if (n < info.min_n) reject(info.id, n, "requires n >= " + std::to_string(info.min_n));
    if (info.parity == Parity::Odd && n % 2 == 0) reject(info.id, n, "requires odd n");
    if (info.parity == Parity::Even && n % 2 != 0) reject(info.id, n, "requires even n");
}

// [e_i,x] = v and [x,e_i] = -v (Lie extensions)
void set_x_anti(Builder& b, long x, long i, long k, const Rational& c) {
    if (!c.is_zero()) b.anti(i, x, k, c);
}

}  // namespace

const std::vector<FamilyInfo>& family_catalog() {
    static const std::vector<FamilyInfo> cat = {
        {"F1", "F_1(alpha_3,...,alpha_n,theta)", "alpha3..alphan, theta", "n >= 4", 4, Parity::Any, false, true},
        {"F2", "F_2(beta_3,...,beta_n,gamma)", "beta3..betan, gamma", "n >= 4", 4, Parity::Any, false, true},
        {"F3", "F_3(theta_1,theta_2,theta_3) with [e_i,e_{n-i}] = alpha(-1)^i e_n", "theta1, theta2, theta3, alpha",
         "n >= 4; alpha in {0,1}; alpha = 0 for even n", 4, Parity::Any, false, true},
        {"F1s", "F_1^s with recursion-derived alpha_k, theta = alpha_n", "s", "n >= 4; 3 <= s <= n", 4, Parity::Any,
         false, true},
        {"F2j", "F_2^j: beta_j = 1, all else 0", "j", "n >= 4; 3 <= j <= n", 4, Parity::Any, false, true},
        {"F2j1", "F_2^1: beta_{(n+2)/2} = beta, gamma = 1", "beta", "n >= 4; n even", 4, Parity::Even, false, true},
        {"Ln", "L_n", "", "n >= 3", 3, Parity::Any, true, true},
        {"Qn", "Q_n", "", "n >= 5; n odd", 5, Parity::Odd, true, true},
        {"A", "A^r_{n+1}(alpha_1,...,alpha_t), t = floor((n-r-1)/2)", "r, alpha1..alphat",
         "1 <= r <= n-3; t >= 1; some alpha_i != 0; Jacobi relations on alpha", 4, Parity::Any, true, true},
        {"B", "B^r_{n+1}(alpha_1,...,alpha_t), t = floor((n-r-2)/2)", "r, alpha1..alphat",
         "n odd; 1 <= r <= n-3 with t >= 1 (so r <= n-4); some alpha_i != 0; Jacobi relations on alpha", 5,
         Parity::Odd, true, true},
        {"L1", "solvable extension of F_2(0,...,0,1)", "", "n >= 4; n odd", 5, Parity::Odd, false, false},
        {"L2", "solvable extension of F_2^1, parameter beta", "beta", "n >= 4; n even", 4, Parity::Even, false,
         false},
        {"L3", "solvable extension of F_2^{j0}", "j0", "n >= 4; 3 <= j0 <= n", 4, Parity::Any, false, false},
        {"SolvA", "solvable Lie extension of A^r_{n+1}", "r, alpha1..alphat, a1, b2..bn",
         "as A; b-parameters must keep the table Leibniz", 4, Parity::Any, true, false},
        {"SolvB", "solvable Lie extension of B^r_{n+1}", "r, alpha1..alphat, b2..b(n-1)",
         "as B; b-parameters must keep the table Leibniz", 5, Parity::Odd, true, false},
    };
    return cat;
}

const FamilyInfo& family_info(const std::string& id) {
    for (const auto& f : family_catalog())
        if (f.id == id) return f;
    std::string ids;
    for (const auto& f : family_catalog()) ids += (ids.empty() ? "" : ", ") + f.id;
    throw std::invalid_argument("unknown family '" + id + "'; known: " + ids);
}

long family_t(const std::string& id, long n, long r) {
    if (id == "A" || id == "SolvA") return (n - r - 1) / 2;
    if (id == "B" || id == "SolvB") return (n - r - 2) / 2;
    throw std::invalid_argument("family_t: no t for family " + id);
}

Rational fuss_catalan(long m, long p) {
    return binomial(p * m, m) / Rational((p - 1) * m + 1);
}

Rational f1s_closed_form(long k, long s) {
    if ((k - s) % (s - 2) != 0 || k < s) return Rational(0);
    long t = (k - s) / (s - 2);
    return sgn_pow(t) * fuss_catalan(t + 1, s - 1);
}

std::vector<Rational> f1s_alphas(long n, long s) {
    if (s < 3 || s > n) throw std::invalid_argument("F1s: need 3 <= s <= n");
    std::vector<Rational> al(static_cast<std::size_t>(n + 1), Rational(0));  // index k
    for (long k = 3; k <= n; ++k) {
        Rational S(0);
        for (long j = 4; j <= k; ++j) S += al[static_cast<std::size_t>(j - 1)] * al[static_cast<std::size_t>(k - j + 3)];
        // alpha_k (a_1 - (k-2) a_0) = (k/2) a_1 S at a_0 = 1, a_1 = s-2
        Rational rhs = Rational(k, 2) * Rational(s - 2) * S;
        Rational lhs_coef(s - k);
        if (lhs_coef.is_zero()) {
            if (!rhs.is_zero())
                throw std::runtime_error("F1s recursion inconsistent at k=s=" + std::to_string(k));
            al[static_cast<std::size_t>(k)] = Rational(1);  // the free normalization
        } else {
            al[static_cast<std::size_t>(k)] = rhs / lhs_coef;
        }
    }
    return std::vector<Rational>(al.begin() + 3, al.end());
}

Algebra make_F1s(long n, long s) { return make_family(FamilySpec("F1s", n, {{"s", Rational(s)}})); }

void put_alphas(std::map<std::string, Rational>& params, const std::vector<Rational>& alphas) {
    for (std::size_t k = 0; k < alphas.size(); ++k) params["alpha" + std::to_string(k + 1)] = alphas[k];
}

std::vector<Rational> find_valid_alphas(const std::string& id, long n, long r) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, long, long>, std::vector<Rational>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({id, n, r});
        if (it != cache.end()) return it->second;
    }
    const long t = family_t(id, n, r);
    std::vector<Rational> found;
    if (t >= 1) {
        static const long grid[] = {0, 1, -1, 2, -2, 3, -3};
        std::vector<std::size_t> idx(static_cast<std::size_t>(t - 1), 0);
        for (;;) {
            std::vector<Rational> al{Rational(1)};
            for (auto g : idx) al.push_back(Rational(grid[g]));
            std::map<std::string, Rational> p{{"r", Rational(r)}};
            put_alphas(p, al);
            try {
                make_family(FamilySpec(id, n, p));
                found = al;
                break;
            } catch (const std::runtime_error&) {
            }
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == std::size(grid)) idx[pos++] = 0;
            if (pos == idx.size()) break;
        }
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[{id, n, r}] = found;
    return found;
}

Algebra make_family(const FamilySpec& spec) { return make_family(spec, true); }

Algebra make_family(const FamilySpec& spec, bool enforce_parity) {
    const FamilyInfo& info = family_info(spec.id);
    const long n = spec.n;
    if (enforce_parity)
        check_parity(info, n);
    else if (n < 4)
        reject(spec.id, n, "requires n >= 4");
    Params p(spec);
    const std::string& id = spec.id;
    const bool solv = !info.nilpotent;
    Builder b(static_cast<std::size_t>(n + 1 + (solv ? 1 : 0)));
    const long x = n + 1;

    if (id == "F1") {
        std::vector<Rational> al(static_cast<std::size_t>(n + 1));
        for (long k = 3; k <= n; ++k) al[static_cast<std::size_t>(k)] = p.get("alpha" + std::to_string(k));
        fill_F1(b, n, al, p.get("theta"));
    } else if (id == "F2") {
        std::vector<Rational> be(static_cast<std::size_t>(n + 1));
        for (long k = 3; k <= n; ++k) be[static_cast<std::size_t>(k)] = p.get("beta" + std::to_string(k));
        fill_F2(b, n, be, p.get("gamma"));
    } else if (id == "F3") {
        Rational alpha = p.get("alpha");
        if (alpha != Rational(0) && alpha != Rational(1)) reject(id, n, "alpha must be 0 or 1");
        if (n % 2 == 0 && !alpha.is_zero()) reject(id, n, "alpha = 0 for even n");
        fill_F3(b, n, p.get("theta1"), p.get("theta2"), p.get("theta3"), alpha);
    } else if (id == "F1s") {
        long s = p.integer("s");
        if (s < 3 || s > n) reject(id, n, "need 3 <= s <= n");
        auto a = f1s_alphas(n, s);
        std::vector<Rational> al(3, Rational(0));
        al.insert(al.end(), a.begin(), a.end());
        fill_F1(b, n, al, al[static_cast<std::size_t>(n)]);
    } else if (id == "F2j") {
        long j = p.integer("j");
        if (j < 3 || j > n) reject(id, n, "need 3 <= j <= n");
        std::vector<Rational> be(static_cast<std::size_t>(n + 1));
        be[static_cast<std::size_t>(j)] = 1;
        fill_F2(b, n, be, 0);
    } else if (id == "F2j1") {
        std::vector<Rational> be(static_cast<std::size_t>(n + 1));
        be[static_cast<std::size_t>((n + 2) / 2)] = p.get("beta");
        fill_F2(b, n, be, 1);
    } else if (id == "Ln") {
        fill_Ln(b, n);
    } else if (id == "Qn") {
        for (long i = 1; i <= n - 2; ++i) b.anti(0, i, i + 1, 1);
        fill_Qtail(b, n);
    } else if (id == "A" || id == "B" || id == "SolvA" || id == "SolvB") {
        const bool isA = id == "A" || id == "SolvA";
        long r = p.integer("r");
        if (r < 1 || r > n - 3) reject(id, n, "need 1 <= r <= n-3");
        long t = family_t(id, n, r);
        if (t < 1) reject(id, n, "t = " + std::to_string(t) + " leaves no alpha parameter (need r <= n-4 for B)");
        auto al = read_alphas(p, t);
        need_nonzero_alpha(id, n, al);
        if (isA)
            fill_A(b, n, r, al);
        else
            fill_B(b, n, r, al);
        if (id == "SolvA") {
            Rational a1 = p.get("a1");
            std::vector<Rational> bb(static_cast<std::size_t>(n + 1));
            for (long i = 2; i <= n; ++i) bb[static_cast<std::size_t>(i)] = p.get("b" + std::to_string(i));
            auto B = [&](long i) { return (i >= 2 && i <= n) ? bb[static_cast<std::size_t>(i)] : Rational(0); };
            set_x_anti(b, x, 0, 0, 1);
            set_x_anti(b, x, 0, 1, a1);
            set_x_anti(b, x, 1, 1, Rational(1 + r));
            for (long i = 2; i <= n; ++i) set_x_anti(b, x, 1, i, B(i));
            set_x_anti(b, x, 2, 2, Rational(2 + r));
            for (long i = 3; i <= n; ++i) set_x_anti(b, x, 2, i, B(i - 1));
            for (long i = 3; i <= n - r; ++i) {
                set_x_anti(b, x, i, i, Rational(i + r));
                for (long j = i + 1; j <= i + r - 1; ++j) set_x_anti(b, x, i, j, B(j - i + 1));
                Rational inner(0);
                for (long k = 2; k <= i - 1; ++k)
                    for (long s = 1; s <= t; ++s)
                        inner += sgn_pow(s - 1) * al[static_cast<std::size_t>(s - 1)] * binomial(k - s - 1, s - 1);
                set_x_anti(b, x, i, i + r, B(1 + r) + a1 * inner);
                for (long j = i + 1 + r; j <= n; ++j) set_x_anti(b, x, i, j, B(j - i + 1));
            }
            for (long i = std::max(3L, n - r + 1); i <= n; ++i) {
                set_x_anti(b, x, i, i, Rational(i + r));
                for (long j = i + 1; j <= n; ++j) set_x_anti(b, x, i, j, B(j - i + 1));
            }
        } else if (id == "SolvB") {
            std::vector<Rational> bb(static_cast<std::size_t>(n + 1));
            for (long i = 2; i <= n - 1; ++i) bb[static_cast<std::size_t>(i)] = p.get("b" + std::to_string(i));
            auto B = [&](long i) { return (i >= 2 && i <= n - 1) ? bb[static_cast<std::size_t>(i)] : Rational(0); };
            set_x_anti(b, x, 0, 0, 1);
            set_x_anti(b, x, 1, 1, Rational(1 + r));
            for (long i = 2; i <= n - 1; ++i) set_x_anti(b, x, 1, i, B(i));
            for (long i = 2; i <= n - 1; ++i) {
                set_x_anti(b, x, i, i, Rational(i + r));
                for (long j = i + 1; j <= n - 1; ++j) set_x_anti(b, x, i, j, B(j - i + 1));
            }
            set_x_anti(b, x, n, n, Rational(n + 2 * r));
        }
    } else if (id == "L1") {
        b.set(0, 0, 2, 1);
        b.set(1, 1, n, 1);
        b.set(0, x, 0, 1);
        for (long i = 2; i <= n - 1; ++i) b.set(i, 0, i + 1, 1);
        b.set(x, 1, 1, Rational(-n, 2));
        b.set(1, x, 1, Rational(n, 2));
        b.set(x, 0, 0, -1);
        for (long i = 2; i <= n; ++i) b.set(i, x, i, i);
    } else if (id == "L2") {
        Rational beta = p.get("beta");
        const long h = (n + 2) / 2;
        b.set(0, 0, 2, 1);
        b.set(0, 1, h, beta);
        b.set(0, x, 0, 1);
        for (long i = 2; i <= n - 1; ++i) b.set(i, 0, i + 1, 1);
        b.set(1, 1, n, 1);
        b.set(1, x, 1, Rational(n, 2));
        b.set(x, 0, 0, -1);
        for (long i = 2; i <= n / 2; ++i) b.set(i, 1, (n + 2 * i) / 2, beta);
        for (long i = 2; i <= n; ++i) b.set(i, x, i, i);
        b.set(x, 1, 1, Rational(-n, 2));
        b.set(x, 1, n / 2, -beta);
    } else if (id == "L3") {
        long j0 = p.integer("j0");
        if (j0 < 3 || j0 > n) reject(id, n, "need 3 <= j0 <= n");
        b.set(0, 0, 2, 1);
        b.set(0, 1, j0, 1);
        b.set(0, x, 0, 1);
        for (long i = 2; i <= n - 1; ++i) b.set(i, 0, i + 1, 1);
        for (long i = 2; i <= n + 1 - j0; ++i) b.set(i, 1, j0 + i - 1, 1);
        b.set(1, x, 1, Rational(j0 - 1));
        b.set(x, 0, 0, -1);
        b.set(x, 1, 1, Rational(-(j0 - 1)));
        b.set(x, 1, j0 - 1, -1);
        for (long i = 2; i <= n; ++i) b.set(i, x, i, i);
    }
    p.finish();
    return finish(b, spec, solv);
}

}  // namespace leibniz
