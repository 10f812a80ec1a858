#pragma once

// Exact arithmetic and linear algebra over the prime field Z_d, d an odd
// prime. Every element carries its modulus; mixing moduli is a hard error.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qss {

struct ModulusMismatch : std::runtime_error {
    ModulusMismatch() : std::runtime_error("operands live in different prime fields") {}
};

struct InverseOfZero : std::runtime_error {
    InverseOfZero() : std::runtime_error("zero has no multiplicative inverse") {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// The field order d. Construction checks 3 <= d <= 997 and primality, so a
/// PrimeModulus in hand is always a valid odd prime.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint32_t d);

    std::uint32_t d() const noexcept { return d_; }

    friend bool operator==(PrimeModulus a, PrimeModulus b) noexcept { return a.d_ == b.d_; }
    friend bool operator!=(PrimeModulus a, PrimeModulus b) noexcept { return a.d_ != b.d_; }

private:
    std::uint32_t d_;
};

/// One element of Z_d, always stored reduced to [0, d).
class Fp {
public:
    Fp(std::int64_t value, PrimeModulus mod) : mod_(mod), v_(reduce(value, mod)) {}

    std::uint32_t value() const noexcept { return v_; }
    PrimeModulus modulus() const noexcept { return mod_; }

    friend Fp operator+(Fp a, Fp b) { a.check(b); return Fp(std::int64_t(a.v_) + b.v_, a.mod_); }
    friend Fp operator-(Fp a, Fp b) { a.check(b); return Fp(std::int64_t(a.v_) - b.v_, a.mod_); }
    friend Fp operator*(Fp a, Fp b) { a.check(b); return Fp(std::int64_t(a.v_) * b.v_, a.mod_); }
    Fp operator-() const { return Fp(-std::int64_t(v_), mod_); }

    Fp inv() const;

    friend bool operator==(Fp a, Fp b) { a.check(b); return a.v_ == b.v_; }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }

    bool is_zero() const noexcept { return v_ == 0; }

private:
    static std::uint32_t reduce(std::int64_t value, PrimeModulus mod) noexcept {
        std::int64_t r = value % mod.d();
        if (r < 0) r += mod.d();
        return static_cast<std::uint32_t>(r);
    }
    void check(Fp other) const {
        if (mod_ != other.mod_) throw ModulusMismatch{};
    }

    PrimeModulus mod_;
    std::uint32_t v_;
};

inline Fp fp_add(Fp a, Fp b) { return a + b; }
inline Fp fp_mul(Fp a, Fp b) { return a * b; }
inline Fp fp_neg(Fp a) { return -a; }
inline Fp fp_inv(Fp a) { return a.inv(); }

/// Fixed-length vector with a single shared modulus.
class FpVector {
public:
    FpVector(PrimeModulus mod, std::size_t len) : mod_(mod), v_(len, 0) {}
    FpVector(PrimeModulus mod, std::initializer_list<std::int64_t> entries);
    static FpVector from_ints(PrimeModulus mod, const std::vector<std::int64_t>& entries);

    std::size_t size() const noexcept { return v_.size(); }
    PrimeModulus modulus() const noexcept { return mod_; }

    Fp at(std::size_t i) const { return Fp(v_.at(i), mod_); }
    void set(std::size_t i, Fp x) {
        if (x.modulus() != mod_) throw ModulusMismatch{};
        v_.at(i) = x.value();
    }

    const std::vector<std::uint32_t>& raw() const noexcept { return v_; }

    friend bool operator==(const FpVector& a, const FpVector& b) {
        if (a.mod_ != b.mod_) throw ModulusMismatch{};
        return a.v_ == b.v_;
    }

private:
    PrimeModulus mod_;
    std::vector<std::uint32_t> v_;
};

/// Row-major k x l matrix over Z_d.
class FpMatrix {
public:
    FpMatrix(PrimeModulus mod, std::size_t rows, std::size_t cols)
        : mod_(mod), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    static FpMatrix from_ints(PrimeModulus mod,
                              const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    PrimeModulus modulus() const noexcept { return mod_; }

    Fp at(std::size_t r, std::size_t c) const { return Fp(a_.at(r * cols_ + c), mod_); }
    void set(std::size_t r, std::size_t c, Fp x) {
        if (x.modulus() != mod_) throw ModulusMismatch{};
        a_.at(r * cols_ + c) = x.value();
    }

    FpMatrix transposed() const;
    /// New matrix made of the given rows, in the given order.
    FpMatrix select_rows(const std::vector<std::size_t>& idx) const;

    static FpMatrix identity(PrimeModulus mod, std::size_t n);

private:
    PrimeModulus mod_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> a_;
};

FpVector mat_vec_mul(const FpMatrix& m, const FpVector& v);

/// Canonical solve of A x = b: Gaussian elimination to reduced row echelon
/// form, pivots chosen at the smallest usable index, free variables set to 0.
/// Deterministic; nullopt on inconsistent systems.
std::optional<FpVector> solve_linear(const FpMatrix& a, const FpVector& b);

/// Canonical h = (1, h_2, ..., h_l) with A h = 0, or nullopt when no kernel
/// vector has a unit first coordinate (the free-variable-zero rule again).
std::optional<FpVector> kernel_with_unit_first_coord(const FpMatrix& a);

}  // namespace qss
