#include "leibniz/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace leibniz {

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && digit(a[i2])) ++i2;
            while (j2 < b.size() && digit(b[j2])) ++j2;
            std::string_view ra(a.data() + i, i2 - i), rb(b.data() + j, j2 - j);
            while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
            while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
            if (ra.size() != rb.size()) return ra.size() < rb.size();
            if (ra != rb) return ra < rb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;  // e.g. "x01" vs "x1"
}

bool GrlexDesc::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

bool valid_var_name(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

MultiPoly::MultiPoly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::var(const std::string& name) {
    if (!valid_var_name(name)) throw std::invalid_argument("bad indeterminate name '" + name + "'");
    MultiPoly p;
    p.vars_ = {name};
    p.terms_.emplace(Exponents{1}, Rational(1));
    return p;
}

bool MultiPoly::has_var(const std::string& name) const {
    return std::binary_search(vars_.begin(), vars_.end(), name, NaturalLess{});
}

bool MultiPoly::is_constant() const { return vars_.empty(); }

Rational MultiPoly::constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant: " + str());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational MultiPoly::constant_term() const {
    auto it = terms_.find(Exponents(vars_.size(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned MultiPoly::total_degree() const {
    if (terms_.empty()) return 0;
    unsigned d = 0;
    for (unsigned e : terms_.begin()->first) d += e;
    return d;
}

Rational MultiPoly::leading_coefficient() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::optional<Rational> MultiPoly::linear_coefficient(const std::string& name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name, NaturalLess{});
    if (it == vars_.end() || *it != name) return std::nullopt;
    std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
    std::optional<Rational> found;
    for (const auto& [ex, c] : terms_) {
        if (ex[idx] == 0) continue;
        if (found || ex[idx] != 1) return std::nullopt;
        for (std::size_t k = 0; k < ex.size(); ++k)
            if (k != idx && ex[k] != 0) return std::nullopt;
        found = c;
    }
    return found;
}

void MultiPoly::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [ex, c] : terms_)
        for (std::size_t k = 0; k < ex.size(); ++k)
            if (ex[k]) used[k] = true;
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
    std::vector<std::string> keep;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (used[k]) {
            keep.push_back(vars_[k]);
            idx.push_back(k);
        }
    Terms t;
    for (auto& [ex, c] : terms_) {
        Exponents e2(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) e2[k] = ex[idx[k]];
        t.emplace(std::move(e2), c);
    }
    vars_ = std::move(keep);
    terms_ = std::move(t);
}

namespace {
std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), NaturalLess{});
    return out;
}
}  // namespace

MultiPoly MultiPoly::remapped(const std::vector<std::string>& target) const {
    if (target == vars_) return *this;
    std::vector<std::size_t> pos(vars_.size());
    std::size_t t = 0;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        while (target[t] != vars_[k]) ++t;
        pos[k] = t;
    }
    MultiPoly r;
    r.vars_ = target;
    for (const auto& [ex, c] : terms_) {
        Exponents e2(target.size(), 0);
        for (std::size_t k = 0; k < ex.size(); ++k) e2[pos[k]] = ex[k];
        r.terms_.emplace(std::move(e2), c);
    }
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (vars_ == o.vars_) {
        for (const auto& [ex, c] : o.terms_) {
            auto [it, ins] = terms_.try_emplace(ex, c);
            if (!ins) {
                it->second += c;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        normalize();
        return *this;
    }
    auto u = merge_vars(vars_, o.vars_);
    *this = remapped(u);
    return *this += o.remapped(u);
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [ex, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c.is_zero()) return *this = MultiPoly();
    for (auto& [ex, v] : terms_) v *= c;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly();
    if (b.is_constant()) return a * b.constant_value();
    if (a.is_constant()) return b * a.constant_value();
    auto u = merge_vars(a.vars_, b.vars_);
    MultiPoly x = a.remapped(u), y = b.remapped(u), r;
    r.vars_ = u;
    Exponents e(u.size());
    for (const auto& [ea, ca] : x.terms_)
        for (const auto& [eb, cb] : y.terms_) {
            for (std::size_t k = 0; k < u.size(); ++k) e[k] = ea[k] + eb[k];
            auto [it, ins] = r.terms_.try_emplace(e, ca * cb);
            if (!ins) it->second += ca * cb;
        }
    r.normalize();
    return r;
}

bool operator<(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_) return a.vars_ < b.vars_;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    GrlexDesc g;
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return g(ia->first, ib->first);
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
}

MultiPoly MultiPoly::evaluate(const std::map<std::string, Rational>& values) const {
    std::vector<const Rational*> val(vars_.size(), nullptr);
    bool any = false;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = values.find(vars_[k]);
        if (it != values.end()) {
            val[k] = &it->second;
            any = true;
        }
    }
    if (!any) return *this;
    MultiPoly r;
    r.vars_ = vars_;
    for (const auto& [ex, c] : terms_) {
        Rational coef = c;
        Exponents e2 = ex;
        for (std::size_t k = 0; k < ex.size(); ++k)
            if (val[k] && ex[k]) {
                coef *= pow(*val[k], ex[k]);
                e2[k] = 0;
            }
        if (coef.is_zero()) continue;
        auto [it, ins] = r.terms_.try_emplace(std::move(e2), coef);
        if (!ins) it->second += coef;
    }
    r.normalize();
    return r;
}

MultiPoly poly_substitute(const MultiPoly& p, const std::string& var, const MultiPoly& value) {
    if (!valid_var_name(var)) throw std::invalid_argument("bad indeterminate name '" + var + "'");
    auto it = std::lower_bound(p.vars_.begin(), p.vars_.end(), var, NaturalLess{});
    if (it == p.vars_.end() || *it != var) return p;
    const std::size_t idx = static_cast<std::size_t>(it - p.vars_.begin());
    if (value.is_constant()) return p.evaluate({{var, value.constant_value()}});

    // group by the exponent of var: p = sum_e C_e * var^e
    std::vector<std::string> rest = p.vars_;
    rest.erase(rest.begin() + static_cast<long>(idx));
    std::map<unsigned, MultiPoly> groups;
    for (const auto& [ex, c] : p.terms_) {
        MultiPoly& g = groups[ex[idx]];
        g.vars_ = rest;
        Exponents e2 = ex;
        e2.erase(e2.begin() + static_cast<long>(idx));
        g.terms_.emplace(std::move(e2), c);
    }
    MultiPoly result, power(1);
    unsigned at = 0;
    for (auto& [e, g] : groups) {
        g.normalize();
        while (at < e) {
            power = power * value;
            ++at;
        }
        result += g * power;
    }
    return result;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ex, c] : terms_) {
        bool constant = std::all_of(ex.begin(), ex.end(), [](unsigned e) { return e == 0; });
        Rational mag = c.sign() < 0 ? -c : c;
        if (first)
            os << (c.sign() < 0 ? "-" : "");
        else
            os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        bool wrote = false;
        if (constant || mag != Rational(1)) {
            os << mag;
            wrote = true;
        }
        for (std::size_t k = 0; k < ex.size(); ++k) {
            if (!ex[k]) continue;
            if (wrote) os << '*';
            os << vars_[k];
            if (ex[k] > 1) os << '^' << ex[k];
            wrote = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

std::set<std::string, NaturalLess> collect_vars(const std::vector<MultiPoly>& ps) {
    std::set<std::string, NaturalLess> out;
    for (const auto& p : ps) out.insert(p.vars().begin(), p.vars().end());
    return out;
}

}  // namespace leibniz
