#include <kgraph/sparse_matrix.hpp>

#include <algorithm>
#include <stdexcept>

namespace kgraph {

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add index out of range");
    if (v == 0) return;
    auto key = std::make_pair(r, c);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, v);
        return;
    }
    it->second += v;
    if (it->second == 0) entries_.erase(it);
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Rational(0) : it->second;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.entries_.emplace(std::make_pair(rc.second, rc.first), v);
    return t;
}

std::vector<SparseVector> SparseMatrix::row_vectors() const {
    std::vector<SparseVector> out(rows_);
    for (const auto& [rc, v] : entries_) out[rc.first].emplace(rc.second, v);
    return out;
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
    SparseVector out;
    for (const auto& [rc, a] : entries_) {
        auto it = v.find(rc.second);
        if (it == v.end()) continue;
        out[rc.first] += a * it->second;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("SparseMatrix::multiply shape mismatch");
    SparseMatrix out(rows_, rhs.cols_);
    auto rrows = rhs.row_vectors();
    for (const auto& [rc, a] : entries_)
        for (const auto& [c, b] : rrows[rc.second]) out.add(rc.first, c, a * b);
    return out;
}

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;  // sorted by column

void make_primitive(IntRow& row) {
    Integer g = 0;
    for (auto& [c, v] : row) {
        g = gcd(g, v);
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_int_row(const SparseVector& v) {
    Integer l = 1;
    for (const auto& [c, q] : v) l = lcm(l, Integer(q.get_den()));
    IntRow row;
    row.reserve(v.size());
    for (const auto& [c, q] : v) row.emplace_back(c, Integer(q.get_num() * (l / q.get_den())));
    make_primitive(row);
    return row;
}

// a <- pa*a - pb*b
IntRow combine(const IntRow& a, const Integer& pa, const IntRow& b, const Integer& pb) {
    IntRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.emplace_back(a[i].first, pa * a[i].second);
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, -pb * b[j].second);
            ++j;
        } else {
            Integer v = pa * a[i].second - pb * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    return out;
}

} // namespace

std::size_t rank(const SparseMatrix& m) {
    std::map<std::size_t, IntRow> pivots;  // leading column -> row
    std::vector<IntRow> work;
    for (auto& v : m.row_vectors())
        if (!v.empty()) work.push_back(to_int_row(v));
    // sparse rows first keeps fill-in low
    std::stable_sort(work.begin(), work.end(), [](const IntRow& a, const IntRow& b) { return a.size() < b.size(); });
    for (auto& row : work) {
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) {
                pivots.emplace(row.front().first, std::move(row));
                break;
            }
            IntRow& piv = it->second;
            if (mpz_cmpabs(row.front().second.get_mpz_t(), piv.front().second.get_mpz_t()) < 0) std::swap(row, piv);
            Integer g = gcd(piv.front().second, row.front().second);
            Integer pa = piv.front().second / g;
            Integer pb = row.front().second / g;
            row = combine(row, pa, piv, pb);
        }
    }
    return pivots.size();
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
    // reduced row echelon form over Q
    std::map<std::size_t, SparseVector> pivots;
    for (auto row : m.row_vectors()) {
        for (const auto& [pc, prow] : pivots) {
            auto it = row.find(pc);
            if (it == row.end()) continue;
            Rational f = it->second;
            for (const auto& [c, v] : prow) {
                Rational& x = row[c];
                x -= f * v;
                if (x == 0) row.erase(c);
            }
        }
        if (row.empty()) continue;
        std::size_t lead = row.begin()->first;
        Rational inv = 1 / row.begin()->second;
        for (auto& [c, v] : row) v *= inv;
        for (auto& [pc, prow] : pivots) {
            auto it = prow.find(lead);
            if (it == prow.end()) continue;
            Rational f = it->second;
            for (const auto& [c, v] : row) {
                Rational& x = prow[c];
                x -= f * v;
                if (x == 0) prow.erase(c);
            }
        }
        pivots.emplace(lead, std::move(row));
    }
    std::vector<SparseVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (pivots.count(free)) continue;
        SparseVector v;
        v[free] = 1;
        for (const auto& [pc, prow] : pivots) {
            auto it = prow.find(free);
            if (it != prow.end()) v[pc] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace kgraph
