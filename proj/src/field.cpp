#include "qss/field.hpp"

namespace qss {

namespace {

bool is_odd_prime(std::uint32_t n) {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint32_t p = 3; p * p <= n; p += 2)
        if (n % p == 0) return false;
    return true;
}

// a^e mod d by square-and-multiply; d <= 997 so products fit in 64 bits.
std::uint32_t pow_mod(std::uint64_t a, std::uint32_t e, std::uint32_t d) {
    std::uint64_t r = 1 % d;
    a %= d;
    while (e) {
        if (e & 1) r = r * a % d;
        a = a * a % d;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

}  // namespace

PrimeModulus::PrimeModulus(std::uint32_t d) : d_(d) {
    if (d > 997 || !is_odd_prime(d))
        throw std::invalid_argument("modulus must be an odd prime in [3, 997], got " +
                                    std::to_string(d));
}

Fp Fp::inv() const {
    if (v_ == 0) throw InverseOfZero{};
    // Fermat: a^(d-2) = a^-1 for prime d.
    return Fp(pow_mod(v_, mod_.d() - 2, mod_.d()), mod_);
}

FpVector::FpVector(PrimeModulus mod, std::initializer_list<std::int64_t> entries)
    : mod_(mod), v_() {
    v_.reserve(entries.size());
    for (auto e : entries) v_.push_back(Fp(e, mod).value());
}

FpVector FpVector::from_ints(PrimeModulus mod, const std::vector<std::int64_t>& entries) {
    FpVector out(mod, entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) out.set(i, Fp(entries[i], mod));
    return out;
}

FpMatrix FpMatrix::from_ints(PrimeModulus mod,
                             const std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty()) return FpMatrix(mod, 0, 0);
    const std::size_t cols = rows.front().size();
    FpMatrix out(mod, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DimensionMismatch("ragged matrix literal");
        for (std::size_t c = 0; c < cols; ++c) out.set(r, c, Fp(rows[r][c], mod));
    }
    return out;
}

FpMatrix FpMatrix::transposed() const {
    FpMatrix out(mod_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
    return out;
}

FpMatrix FpMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    FpMatrix out(mod_, idx.size(), cols_);
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, at(idx[r], c));
    return out;
}

FpMatrix FpMatrix::identity(PrimeModulus mod, std::size_t n) {
    FpMatrix out(mod, n, n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, i, Fp(1, mod));
    return out;
}

FpVector mat_vec_mul(const FpMatrix& m, const FpVector& v) {
    if (m.modulus() != v.modulus()) throw ModulusMismatch{};
    if (m.cols() != v.size())
        throw DimensionMismatch("matrix has " + std::to_string(m.cols()) +
                                " columns, vector has " + std::to_string(v.size()) +
                                " entries");
    FpVector out(m.modulus(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Fp acc(0, m.modulus());
        for (std::size_t c = 0; c < m.cols(); ++c) acc = acc + m.at(r, c) * v.at(c);
        out.set(r, acc);
    }
    return out;
}

namespace {

// Augmented-matrix RREF. Pivot rule: scan columns left to right and, within a
// column, take the topmost unused row with a nonzero entry. Returns pivot
// column per pivot row.
struct Rref {
    FpMatrix a;
    FpVector b;
    std::vector<std::size_t> pivot_col;  // one entry per pivot row
    bool consistent;
};

Rref rref(FpMatrix a, FpVector b) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t pr = 0;  // next pivot row
    std::vector<std::size_t> pivot_col;
    for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
        std::size_t sel = rows;
        for (std::size_t r = pr; r < rows; ++r)
            if (!a.at(r, pc).is_zero()) { sel = r; break; }
        if (sel == rows) continue;
        if (sel != pr) {
            for (std::size_t c = 0; c < cols; ++c) {
                Fp t = a.at(pr, c);
                a.set(pr, c, a.at(sel, c));
                a.set(sel, c, t);
            }
            Fp t = b.at(pr);
            b.set(pr, b.at(sel));
            b.set(sel, t);
        }
        const Fp piv_inv = a.at(pr, pc).inv();
        for (std::size_t c = 0; c < cols; ++c) a.set(pr, c, a.at(pr, c) * piv_inv);
        b.set(pr, b.at(pr) * piv_inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const Fp f = a.at(r, pc);
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < cols; ++c)
                a.set(r, c, a.at(r, c) - f * a.at(pr, c));
            b.set(r, b.at(r) - f * b.at(pr));
        }
        pivot_col.push_back(pc);
        ++pr;
    }
    bool consistent = true;
    for (std::size_t r = pr; r < rows; ++r)
        if (!b.at(r).is_zero()) { consistent = false; break; }
    return Rref{std::move(a), std::move(b), std::move(pivot_col), consistent};
}

}  // namespace

std::optional<FpVector> solve_linear(const FpMatrix& a, const FpVector& b) {
    if (a.modulus() != b.modulus()) throw ModulusMismatch{};
    if (a.rows() != b.size())
        throw DimensionMismatch("system has " + std::to_string(a.rows()) +
                                " equations but " + std::to_string(b.size()) +
                                " right-hand entries");
    Rref r = rref(a, b);
    if (!r.consistent) return std::nullopt;
    FpVector x(a.modulus(), a.cols());  // free variables stay 0
    for (std::size_t i = 0; i < r.pivot_col.size(); ++i) x.set(r.pivot_col[i], r.b.at(i));
    return x;
}

std::optional<FpVector> kernel_with_unit_first_coord(const FpMatrix& a) {
    if (a.cols() == 0) throw DimensionMismatch("kernel of a matrix with no columns");
    const PrimeModulus mod = a.modulus();
    // Substitute h_1 = 1 and solve A[:,1:] t = -A[:,0] for the tail.
    FpMatrix tail(mod, a.rows(), a.cols() - 1);
    FpVector rhs(mod, a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        rhs.set(r, -a.at(r, 0));
        for (std::size_t c = 1; c < a.cols(); ++c) tail.set(r, c - 1, a.at(r, c));
    }
    auto t = solve_linear(tail, rhs);
    if (!t) return std::nullopt;
    FpVector h(mod, a.cols());
    h.set(0, Fp(1, mod));
    for (std::size_t c = 1; c < a.cols(); ++c) h.set(c, t->at(c - 1));
    return h;
}

}  // namespace qss
