#pragma once

// Coefficient backends for form coefficients. All three are exact under the
// operations the rest of the toolkit needs: pointwise arithmetic, Wirtinger
// derivatives, conjugation and zero-mode (mean) extraction.
//
//   FourierField    bandlimited function on the unit torus [0,1)^{2n}
//   PolyField       polynomial in the commuting symbols z_1..z_n, zbar_1..zbar_n
//   CoframeConstant constant coefficient in an invariant coframe
//
// Real-axis layout on the torus: axis 2(j-1) is x_j, axis 2(j-1)+1 is y_j,
// with z_j = x_j + i y_j.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hermet/errors.hpp"

namespace hermet {

using cplx = std::complex<double>;

inline constexpr int kMaxComplexDim = 6;
inline constexpr int kMaxRealAxes = 2 * kMaxComplexDim;
inline constexpr int kDefaultBandwidthCap = 64;

/// A Wirtinger derivative direction: d/dz_j or d/dzbar_j, j in 1..n.
struct Axis {
    int j = 1;
    bool bar = false;
};
inline Axis z_axis(int j) { return {j, false}; }
inline Axis zbar_axis(int j) { return {j, true}; }

namespace detail {
inline void check_complex_dim(int n) {
    if (n < 1 || n > kMaxComplexDim)
        throw InvalidInput("complex dimension " + std::to_string(n) + " outside 1.." +
                           std::to_string(kMaxComplexDim));
}
inline void check_axis(int n, Axis a) {
    if (a.j < 1 || a.j > n)
        throw InvalidInput("derivative axis " + std::to_string(a.j) + " outside 1.." + std::to_string(n));
}
} // namespace detail

// ---------------------------------------------------------------------------
// FourierField
// ---------------------------------------------------------------------------

/// Integer frequency vector over the 2n real axes; unused axes stay zero.
struct FreqVec {
    std::array<std::int16_t, kMaxRealAxes> k{};
    friend auto operator<=>(const FreqVec&, const FreqVec&) = default;
};

/// value(x) = sum_k amp_k exp(2 pi i k.x) with finitely many modes. Products
/// add bandwidths exactly; exceeding the cap is an error, never a truncation.
class FourierField {
public:
    using Term = std::pair<FreqVec, cplx>;

    /// Cap applied to newly constructed fields. Set once at process start
    /// (the CLI does this from its flag) before any parallel work.
    static int& default_bandwidth_cap() {
        static int cap = kDefaultBandwidthCap;
        return cap;
    }

    FourierField() = default;
    explicit FourierField(int n) : n_(n), real_(true) { detail::check_complex_dim(n); }

    static FourierField zero(int n) { return FourierField(n); }

    static FourierField constant(int n, cplx value) {
        FourierField f(n);
        if (value != 0.0) f.modes_.push_back({FreqVec{}, value});
        f.real_ = value.imag() == 0.0;
        return f;
    }

    static FourierField one(int n) { return constant(n, 1.0); }

    static FourierField mode(int n, std::span<const int> k, cplx amp) {
        FourierField f(n);
        if (static_cast<int>(k.size()) != 2 * n)
            throw InvalidInput("frequency vector length must be 2n");
        FreqVec fv;
        bool all_zero = true;
        for (int a = 0; a < 2 * n; ++a) {
            fv.k[a] = static_cast<std::int16_t>(k[a]);
            if (k[a] != 0) all_zero = false;
        }
        if (amp != 0.0) f.modes_.push_back({fv, amp});
        f.real_ = all_zero && amp.imag() == 0.0;
        f.check_cap();
        return f;
    }

    /// amp * e_k + conj(amp) * e_{-k}; real by construction.
    static FourierField harmonic(int n, std::span<const int> k, cplx amp) {
        std::vector<int> neg(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
        FourierField f = mode(n, k, amp) + mode(n, neg, std::conj(amp));
        f.real_ = true;
        return f;
    }

    /// cos(2 pi <k, x>) scaled by `amplitude`.
    static FourierField cosine(int n, std::span<const int> k, double amplitude) {
        return harmonic(n, k, cplx(amplitude / 2.0, 0.0));
    }

    int dim() const { return n_; }
    bool is_zero() const { return modes_.empty(); }
    bool real_flag() const { return real_; }
    int bandwidth_cap() const { return cap_; }
    const std::vector<Term>& modes() const { return modes_; }

    FourierField with_bandwidth_cap(int cap) const {
        FourierField f = *this;
        f.cap_ = cap;
        f.check_cap();
        return f;
    }

    int bandwidth() const {
        int b = 0;
        for (const auto& [k, amp] : modes_)
            for (int a = 0; a < 2 * n_; ++a) b = std::max(b, std::abs(int(k.k[a])));
        return b;
    }

    friend FourierField operator+(const FourierField& a, const FourierField& b) {
        a.check_same(b);
        FourierField out(a.n_);
        out.cap_ = std::max(a.cap_, b.cap_);
        out.real_ = a.real_ && b.real_;
        out.modes_.reserve(a.modes_.size() + b.modes_.size());
        std::size_t i = 0, j = 0;
        while (i < a.modes_.size() || j < b.modes_.size()) {
            if (j == b.modes_.size() || (i < a.modes_.size() && a.modes_[i].first < b.modes_[j].first)) {
                out.modes_.push_back(a.modes_[i++]);
            } else if (i == a.modes_.size() || b.modes_[j].first < a.modes_[i].first) {
                out.modes_.push_back(b.modes_[j++]);
            } else {
                cplx s = a.modes_[i].second + b.modes_[j].second;
                if (s != 0.0) out.modes_.push_back({a.modes_[i].first, s});
                ++i, ++j;
            }
        }
        return out;
    }

    friend FourierField operator-(const FourierField& a, const FourierField& b) { return a + (-b); }

    FourierField operator-() const {
        FourierField out = *this;
        for (auto& [k, amp] : out.modes_) amp = -amp;
        return out;
    }

    friend FourierField operator*(const FourierField& a, const FourierField& b) {
        a.check_same(b);
        FourierField out(a.n_);
        out.cap_ = std::max(a.cap_, b.cap_);
        out.real_ = a.real_ && b.real_;
        std::vector<Term> prod;
        prod.reserve(a.modes_.size() * b.modes_.size());
        for (const auto& [ka, va] : a.modes_)
            for (const auto& [kb, vb] : b.modes_) {
                FreqVec k;
                for (int t = 0; t < 2 * a.n_; ++t)
                    k.k[t] = static_cast<std::int16_t>(ka.k[t] + kb.k[t]);
                prod.push_back({k, va * vb});
            }
        std::sort(prod.begin(), prod.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        for (std::size_t i = 0; i < prod.size();) {
            cplx s = prod[i].second;
            std::size_t j = i + 1;
            while (j < prod.size() && prod[j].first == prod[i].first) s += prod[j++].second;
            if (s != 0.0) out.modes_.push_back({prod[i].first, s});
            i = j;
        }
        out.check_cap();
        return out;
    }

    FourierField scaled(cplx c) const {
        FourierField out(n_);
        out.cap_ = cap_;
        out.real_ = real_ && c.imag() == 0.0;
        if (c == 0.0) return out;
        out.modes_ = modes_;
        for (auto& [k, amp] : out.modes_) amp *= c;
        return out;
    }

    FourierField conjugated() const {
        FourierField out(n_);
        out.cap_ = cap_;
        out.real_ = real_;
        out.modes_.reserve(modes_.size());
        for (const auto& [k, amp] : modes_) {
            FreqVec nk;
            for (int t = 0; t < 2 * n_; ++t) nk.k[t] = static_cast<std::int16_t>(-k.k[t]);
            out.modes_.push_back({nk, std::conj(amp)});
        }
        std::sort(out.modes_.begin(), out.modes_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return out;
    }

    /// Pointwise real part (f + conj f)/2, exactly Hermitian-symmetric.
    FourierField real_part() const {
        FourierField out = (*this + conjugated()).scaled(0.5);
        out.real_ = true;
        return out;
    }

    /// Wirtinger derivative: a mode e(k) picks up the factor
    /// pi (k_y + i k_x) under d/dz_j and pi (i k_x - k_y) under d/dzbar_j.
    FourierField deriv(Axis a) const {
        detail::check_axis(n_, a);
        FourierField out(n_);
        out.cap_ = cap_;
        out.real_ = false; // Wirtinger derivatives of real fields are complex
        const int xs = 2 * (a.j - 1), ys = xs + 1;
        for (const auto& [k, amp] : modes_) {
            const double kx = k.k[xs], ky = k.k[ys];
            const cplx factor = a.bar ? cplx(-std::numbers::pi * ky, std::numbers::pi * kx)
                                      : cplx(std::numbers::pi * ky, std::numbers::pi * kx);
            if (factor != 0.0) out.modes_.push_back({k, amp * factor});
        }
        return out;
    }

    /// Exact integral over the fundamental domain: the zero-mode amplitude.
    cplx mean() const {
        for (const auto& [k, amp] : modes_)
            if (k == FreqVec{}) return amp;
        return 0.0;
    }

    cplx value_at(std::span<const double> x) const {
        cplx acc = 0.0;
        for (const auto& [k, amp] : modes_) {
            double phase = 0.0;
            for (int t = 0; t < 2 * n_; ++t) phase += double(k.k[t]) * x[t];
            acc += amp * std::polar(1.0, 2.0 * std::numbers::pi * phase);
        }
        return acc;
    }

    double norm1() const {
        double s = 0.0;
        for (const auto& [k, amp] : modes_) s += std::abs(amp);
        return s;
    }

    friend bool operator==(const FourierField& a, const FourierField& b) {
        return a.n_ == b.n_ && a.modes_ == b.modes_;
    }

    static constexpr bool exact_algebra = false;

private:
    void check_same(const FourierField& o) const {
        if (n_ != o.n_)
            throw BackendMismatch("Fourier fields live in different dimensions: " +
                                  std::to_string(n_) + " vs " + std::to_string(o.n_));
    }
    void check_cap() const {
        for (const auto& [k, amp] : modes_)
            for (int t = 0; t < 2 * n_; ++t)
                if (std::abs(int(k.k[t])) > cap_)
                    throw BandwidthOverflow("frequency " + std::to_string(int(k.k[t])) + " on real axis " +
                                            std::to_string(t) + " exceeds bandwidth cap " +
                                            std::to_string(cap_));
    }

    int n_ = 0;
    bool real_ = false;
    int cap_ = default_bandwidth_cap();
    std::vector<Term> modes_; // sorted by frequency vector, no zero amplitudes
};

// ---------------------------------------------------------------------------
// PolyField
// ---------------------------------------------------------------------------

struct PolyExpo {
    std::array<std::uint8_t, kMaxComplexDim> z{};
    std::array<std::uint8_t, kMaxComplexDim> zb{};
    friend auto operator<=>(const PolyExpo&, const PolyExpo&) = default;
};

/// Chart-local polynomial in z_1..z_n and zbar_1..zbar_n with complex
/// coefficients. Not integrable over a compact model; mean() is rejected.
class PolyField {
public:
    using Term = std::pair<PolyExpo, cplx>;

    PolyField() = default;
    explicit PolyField(int n) : n_(n) { detail::check_complex_dim(n); }

    static PolyField zero(int n) { return PolyField(n); }

    static PolyField constant(int n, cplx value) {
        PolyField f(n);
        if (value != 0.0) f.terms_.push_back({PolyExpo{}, value});
        return f;
    }

    static PolyField one(int n) { return constant(n, 1.0); }

    static PolyField variable(int n, int j) {
        PolyField f(n);
        detail::check_axis(n, {j, false});
        PolyExpo e;
        e.z[j - 1] = 1;
        f.terms_.push_back({e, 1.0});
        return f;
    }

    static PolyField covariable(int n, int j) {
        PolyField f(n);
        detail::check_axis(n, {j, true});
        PolyExpo e;
        e.zb[j - 1] = 1;
        f.terms_.push_back({e, 1.0});
        return f;
    }

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int t = 0;
            for (int a = 0; a < n_; ++a) t += e.z[a] + e.zb[a];
            d = std::max(d, t);
        }
        return d;
    }

    friend PolyField operator+(const PolyField& a, const PolyField& b) {
        a.check_same(b);
        PolyField out(a.n_);
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                out.terms_.push_back(b.terms_[j++]);
            } else {
                cplx s = a.terms_[i].second + b.terms_[j].second;
                if (s != 0.0) out.terms_.push_back({a.terms_[i].first, s});
                ++i, ++j;
            }
        }
        return out;
    }

    friend PolyField operator-(const PolyField& a, const PolyField& b) { return a + (-b); }

    PolyField operator-() const {
        PolyField out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    friend PolyField operator*(const PolyField& a, const PolyField& b) {
        a.check_same(b);
        PolyField out(a.n_);
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                PolyExpo e;
                for (int t = 0; t < a.n_; ++t) {
                    e.z[t] = static_cast<std::uint8_t>(ea.z[t] + eb.z[t]);
                    e.zb[t] = static_cast<std::uint8_t>(ea.zb[t] + eb.zb[t]);
                }
                prod.push_back({e, ca * cb});
            }
        std::sort(prod.begin(), prod.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        for (std::size_t i = 0; i < prod.size();) {
            cplx s = prod[i].second;
            std::size_t j = i + 1;
            while (j < prod.size() && prod[j].first == prod[i].first) s += prod[j++].second;
            if (s != 0.0) out.terms_.push_back({prod[i].first, s});
            i = j;
        }
        return out;
    }

    PolyField scaled(cplx c) const {
        PolyField out(n_);
        if (c == 0.0) return out;
        out.terms_ = terms_;
        for (auto& [e, v] : out.terms_) v *= c;
        return out;
    }

    /// Conjugation swaps z_j with zbar_j and conjugates coefficients.
    PolyField conjugated() const {
        PolyField out(n_);
        out.terms_.reserve(terms_.size());
        for (const auto& [e, c] : terms_) {
            PolyExpo f;
            f.z = e.zb;
            f.zb = e.z;
            out.terms_.push_back({f, std::conj(c)});
        }
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return out;
    }

    bool real_flag() const { return conjugated() == *this; }

    PolyField deriv(Axis a) const {
        detail::check_axis(n_, a);
        PolyField out(n_);
        const int s = a.j - 1;
        for (const auto& [e, c] : terms_) {
            const std::uint8_t expo = a.bar ? e.zb[s] : e.z[s];
            if (expo == 0) continue;
            PolyExpo f = e;
            if (a.bar) f.zb[s] = static_cast<std::uint8_t>(expo - 1);
            else f.z[s] = static_cast<std::uint8_t>(expo - 1);
            out.terms_.push_back({f, c * double(expo)});
        }
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return out;
    }

    cplx mean() const {
        throw CapabilityError("chart-local field not integrable");
    }

    cplx value_at(std::span<const cplx> z) const {
        cplx acc = 0.0;
        for (const auto& [e, c] : terms_) {
            cplx t = c;
            for (int a = 0; a < n_; ++a) {
                for (int r = 0; r < e.z[a]; ++r) t *= z[a];
                for (int r = 0; r < e.zb[a]; ++r) t *= std::conj(z[a]);
            }
            acc += t;
        }
        return acc;
    }

    double norm1() const {
        double s = 0.0;
        for (const auto& [e, c] : terms_) s += std::abs(c);
        return s;
    }

    friend bool operator==(const PolyField& a, const PolyField& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    static constexpr bool exact_algebra = true;

private:
    void check_same(const PolyField& o) const {
        if (n_ != o.n_) throw BackendMismatch("polynomial fields live in different dimensions");
    }

    int n_ = 0;
    std::vector<Term> terms_; // sorted by exponent, no zero coefficients
};

// ---------------------------------------------------------------------------
// CoframeConstant
// ---------------------------------------------------------------------------

/// Constant coefficient attached to an invariant-coframe monomial. All
/// calculus on this backend enters through structure constants; the scalar
/// itself differentiates to zero.
class CoframeConstant {
public:
    CoframeConstant() = default;
    CoframeConstant(cplx v) : v_(v) {}

    static CoframeConstant zero(int) { return CoframeConstant(0.0); }
    static CoframeConstant one(int) { return CoframeConstant(1.0); }
    static CoframeConstant constant(int, cplx v) { return CoframeConstant(v); }

    int dim() const { return -1; } // dimension-free
    cplx value() const { return v_; }
    bool is_zero() const { return v_ == 0.0; }
    bool real_flag() const { return v_.imag() == 0.0; }

    friend CoframeConstant operator+(CoframeConstant a, CoframeConstant b) { return {a.v_ + b.v_}; }
    friend CoframeConstant operator-(CoframeConstant a, CoframeConstant b) { return {a.v_ - b.v_}; }
    friend CoframeConstant operator*(CoframeConstant a, CoframeConstant b) { return {a.v_ * b.v_}; }
    CoframeConstant operator-() const { return {-v_}; }
    CoframeConstant scaled(cplx c) const { return {v_ * c}; }
    CoframeConstant conjugated() const { return {std::conj(v_)}; }
    CoframeConstant real_part() const { return {cplx(v_.real(), 0.0)}; }
    CoframeConstant deriv(Axis) const { return {0.0}; }
    cplx mean() const { return v_; }
    double norm1() const { return std::abs(v_); }

    friend bool operator==(const CoframeConstant&, const CoframeConstant&) = default;

    static constexpr bool exact_algebra = true;

private:
    cplx v_{0.0};
};

// ---------------------------------------------------------------------------

template <class K>
concept Coefficient = requires(const K& a, const K& b, cplx c, Axis ax, int n) {
    { K::zero(n) } -> std::same_as<K>;
    { K::one(n) } -> std::same_as<K>;
    { a.dim() } -> std::convertible_to<int>;
    { a + b } -> std::same_as<K>;
    { a - b } -> std::same_as<K>;
    { a * b } -> std::same_as<K>;
    { -a } -> std::same_as<K>;
    { a.scaled(c) } -> std::same_as<K>;
    { a.conjugated() } -> std::same_as<K>;
    { a.deriv(ax) } -> std::same_as<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.norm1() } -> std::convertible_to<double>;
    { K::exact_algebra } -> std::convertible_to<bool>;
};

static_assert(Coefficient<FourierField>);
static_assert(Coefficient<PolyField>);
static_assert(Coefficient<CoframeConstant>);

/// Backends whose derivative acts on coordinates (rather than through
/// structure constants).
template <class K>
inline constexpr bool coordinate_backend = false;
template <> inline constexpr bool coordinate_backend<FourierField> = true;
template <> inline constexpr bool coordinate_backend<PolyField> = true;

} // namespace hermet
