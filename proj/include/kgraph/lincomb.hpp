#ifndef KGRAPH_LINCOMB_HPP
#define KGRAPH_LINCOMB_HPP

#include <kgraph/rational.hpp>

#include <map>
#include <utility>

namespace kgraph {

/*
 * Finite formal sum of basis keys with rational coefficients.
 * Zero coefficients are never stored. Keys are assumed canonical; the
 * graph and tree modules canonicalize before calling add().
 */
template <typename Key>
class LinComb {
public:
    using map_type = std::map<Key, Rational>;

    LinComb() = default;
    LinComb(const Key& k, const Rational& c = 1) { add(k, c); }

    void add(const Key& k, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    void add(const LinComb& other, const Rational& c = 1) {
        if (c == 0) return;
        for (const auto& [k, v] : other.terms_) add(k, c * v);
    }

    Rational coef(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    LinComb& operator+=(const LinComb& o) { add(o, 1); return *this; }
    LinComb& operator-=(const LinComb& o) { add(o, -1); return *this; }
    LinComb& operator*=(const Rational& c) {
        if (c == 0) terms_.clear();
        else
            for (auto& kv : terms_) kv.second *= c;
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const map_type& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

private:
    map_type terms_;
};

// Apply a linear map given on basis keys.
template <typename Out, typename In, typename F>
LinComb<Out> linear_map(const LinComb<In>& x, F&& f) {
    LinComb<Out> out;
    for (const auto& [k, c] : x) out.add(f(k), c);
    return out;
}

} // namespace kgraph

#endif // KGRAPH_LINCOMB_HPP
