#pragma once

// Sparse exterior forms of bidegree (p,q) over a pluggable coefficient
// backend. A form is stored as a map from strictly increasing multi-index
// pairs (I,J) to coefficients, representing sum a_{I,Jbar} dz_I ^ dzbar_J in
// the fixed convention order: all dz factors before all dzbar factors, each
// block ascending. Every operation returns a canonically pruned result, so
// structural equality is meaningful.

#include <map>
#include <utility>

#include "hermet/fields.hpp"
#include "hermet/multi_index.hpp"

namespace hermet {

/// Relative pruning threshold for the inexact (Fourier) backend: terms below
/// 1e-14 x (max term magnitude) are floating-point dust, not structure.
inline constexpr double kPruneRel = 1e-14;

template <Coefficient K>
class Form {
public:
    using TermKey = std::pair<MultiIndex, MultiIndex>;
    using TermMap = std::map<TermKey, K>;

    Form(int n, Bidegree deg) : n_(n), deg_(deg) {
        detail::check_complex_dim(n);
        if (deg.p < 0 || deg.q < 0) throw InvalidInput("negative bidegree");
    }

    static Form zero(int n, Bidegree deg) { return Form(n, deg); }

    /// The unit 0-form.
    static Form unit(int n) {
        Form f(n, {0, 0});
        f.terms_[{{}, {}}] = K::one(n);
        return f;
    }

    static Form monomial(int n, MultiIndex I, MultiIndex J, K coeff) {
        Form f(n, {static_cast<int>(I.size()), static_cast<int>(J.size())});
        validate_multi_index(I, n);
        validate_multi_index(J, n);
        f.check_coeff(coeff);
        if (!coeff.is_zero()) f.terms_.emplace(TermKey{std::move(I), std::move(J)}, std::move(coeff));
        return f;
    }

    /// A scalar field seen as a 0-form.
    static Form scalar(int n, K value) { return monomial(n, {}, {}, std::move(value)); }

    int dim() const { return n_; }
    Bidegree bidegree() const { return deg_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Accumulate coeff at (I,J); callers finish construction with prune().
    void add_term(const MultiIndex& I, const MultiIndex& J, const K& coeff) {
        if (static_cast<int>(I.size()) != deg_.p || static_cast<int>(J.size()) != deg_.q)
            throw InvalidInput("term degree does not match form bidegree " + to_string(deg_));
        validate_multi_index(I, n_);
        validate_multi_index(J, n_);
        check_coeff(coeff);
        auto it = terms_.find({I, J});
        if (it == terms_.end()) terms_.emplace(TermKey{I, J}, coeff);
        else it->second = it->second + coeff;
    }

    /// Canonical sparse representation: drop exact zeros, and for inexact
    /// backends anything below kPruneRel of the largest term.
    void prune() {
        double maxn = 0.0;
        for (const auto& [key, c] : terms_) maxn = std::max(maxn, c.norm1());
        for (auto it = terms_.begin(); it != terms_.end();) {
            const double m = it->second.norm1();
            const bool drop = it->second.is_zero() || (!K::exact_algebra && m < kPruneRel * maxn);
            it = drop ? terms_.erase(it) : std::next(it);
        }
    }

    const K* find(const MultiIndex& I, const MultiIndex& J) const {
        auto it = terms_.find({I, J});
        return it == terms_.end() ? nullptr : &it->second;
    }

    /// Largest coefficient magnitude over the stored terms.
    double max_term_norm() const {
        double m = 0.0;
        for (const auto& [key, c] : terms_) m = std::max(m, c.norm1());
        return m;
    }

    friend Form operator+(const Form& a, const Form& b) {
        a.check_compatible(b);
        Form out = a;
        for (const auto& [key, c] : b.terms_) {
            auto it = out.terms_.find(key);
            if (it == out.terms_.end()) out.terms_.emplace(key, c);
            else it->second = it->second + c;
        }
        out.prune();
        return out;
    }

    friend Form operator-(const Form& a, const Form& b) { return a + b.scaled(-1.0); }

    Form scaled(cplx c) const {
        Form out(n_, deg_);
        if (c == 0.0) return out;
        for (const auto& [key, v] : terms_) out.terms_.emplace(key, v.scaled(c));
        out.prune();
        return out;
    }

    /// Multiply every coefficient by a scalar field from the same backend.
    Form scaled_by(const K& f) const {
        Form out(n_, deg_);
        for (const auto& [key, v] : terms_) out.terms_.emplace(key, v * f);
        out.prune();
        return out;
    }

    friend bool operator==(const Form& a, const Form& b) {
        return a.n_ == b.n_ && a.deg_ == b.deg_ && a.terms_ == b.terms_;
    }

private:
    void check_compatible(const Form& o) const {
        if (n_ != o.n_) throw BackendMismatch("forms live in different dimensions");
        if (!(deg_ == o.deg_))
            throw InvalidInput("bidegree mismatch: " + to_string(deg_) + " vs " + to_string(o.deg_));
    }
    void check_coeff(const K& c) const {
        if (c.dim() >= 0 && c.dim() != n_)
            throw BackendMismatch("coefficient dimension does not match form dimension");
    }

    int n_;
    Bidegree deg_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Wedge product and friends
// ---------------------------------------------------------------------------

/// Sign bookkeeping: a term dz_{I1} dzbar_{J1} ^ dz_{I2} dzbar_{J2} re-blocks
/// by moving the p2 dz factors of the right operand past the q1 dzbar factors
/// of the left one, then merging each block.
template <Coefficient K>
Form<K> wedge(const Form<K>& a, const Form<K>& b) {
    if (a.dim() != b.dim()) throw BackendMismatch("wedge: dimension mismatch");
    const Bidegree da = a.bidegree(), db = b.bidegree();
    Form<K> out(a.dim(), {da.p + db.p, da.q + db.q});
    if (da.p + db.p > a.dim() || da.q + db.q > a.dim()) return out; // identically zero
    const int block_sign = (db.p * da.q) % 2 == 0 ? 1 : -1;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            const int si = merge_sign(ka.first, kb.first);
            if (si == 0) continue;
            const int sj = merge_sign(ka.second, kb.second);
            if (sj == 0) continue;
            const int sign = block_sign * si * sj;
            K c = ca * cb;
            if (sign < 0) c = -c;
            out.add_term(merged(ka.first, kb.first), merged(ka.second, kb.second), c);
        }
    }
    out.prune();
    return out;
}

/// conj(dz_I ^ dzbar_J) = dzbar_I ^ dz_J, re-blocked with sign (-1)^{pq}.
template <Coefficient K>
Form<K> conjugate(const Form<K>& a) {
    const Bidegree d = a.bidegree();
    Form<K> out(a.dim(), {d.q, d.p});
    const int sign = (d.p * d.q) % 2 == 0 ? 1 : -1;
    for (const auto& [key, c] : a.terms()) {
        K v = c.conjugated();
        if (sign < 0) v = -v;
        out.add_term(key.second, key.first, v);
    }
    out.prune();
    return out;
}

/// Largest coefficient norm of a - b; the working notion of distance.
template <Coefficient K>
double form_residual(const Form<K>& a, const Form<K>& b) {
    return (a - b).max_term_norm();
}

/// A (p,p)-form is real when it equals its own conjugate. Exact backends
/// compare structurally; the Fourier backend allows relative dust.
template <Coefficient K>
bool is_real(const Form<K>& a, double rel_tol = 1e-13) {
    const Bidegree d = a.bidegree();
    if (d.p != d.q)
        throw InvalidInput("reality test requires bidegree (p,p), got " + to_string(d));
    if constexpr (K::exact_algebra) {
        return conjugate(a) == a;
    } else {
        return form_residual(conjugate(a), a) <= rel_tol * std::max(1.0, a.max_term_norm());
    }
}

/// k-fold wedge power. Odd-degree forms with k >= 2 are rejected: the caller
/// must spell out the intended order explicitly.
template <Coefficient K>
Form<K> power(const Form<K>& a, int k) {
    if (k < 0) throw InvalidInput("negative wedge power");
    if (k >= 2 && a.bidegree().total() % 2 != 0)
        throw InvalidInput("wedge power of an odd-degree form is ambiguous");
    if (k == 0) return Form<K>::unit(a.dim());
    Form<K> out = a;
    for (int i = 1; i < k; ++i) out = wedge(out, a);
    return out;
}

// ---------------------------------------------------------------------------
// Coefficient table view
// ---------------------------------------------------------------------------

/// Read-only (I,J) -> coefficient view of a form with sign-adjusted lookup by
/// arbitrary, possibly unsorted index tuples. Repeated indices give zero.
template <Coefficient K>
class FormCoefficientTable {
public:
    explicit FormCoefficientTable(const Form<K>& f) : form_(&f) {}

    K lookup(MultiIndex I, MultiIndex J) const {
        if (static_cast<int>(I.size()) != form_->bidegree().p ||
            static_cast<int>(J.size()) != form_->bidegree().q)
            throw InvalidInput("lookup tuple lengths must match the form bidegree");
        const int si = sort_with_sign(I);
        if (si == 0) return K::zero(form_->dim());
        const int sj = sort_with_sign(J);
        if (sj == 0) return K::zero(form_->dim());
        validate_multi_index(I, form_->dim());
        validate_multi_index(J, form_->dim());
        const K* c = form_->find(I, J);
        if (!c) return K::zero(form_->dim());
        return si * sj > 0 ? *c : -*c;
    }

private:
    const Form<K>* form_;
};

// ---------------------------------------------------------------------------
// Graded (inhomogeneous) forms
// ---------------------------------------------------------------------------

/// The exterior derivative of a (p,q)-form is not homogeneous; this small
/// wrapper carries its bidegree components. Only the operations needed by
/// the calculus layer and its tests live here.
template <Coefficient K>
class GradedForm {
public:
    explicit GradedForm(int n) : n_(n) {}

    static GradedForm from(Form<K> f) {
        GradedForm g(f.dim());
        g.add(std::move(f));
        return g;
    }

    int dim() const { return n_; }

    void add(Form<K> f) {
        if (f.dim() != n_) throw BackendMismatch("graded form: dimension mismatch");
        f.prune();
        if (f.is_zero()) return;
        const auto key = std::pair{f.bidegree().p, f.bidegree().q};
        auto it = parts_.find(key);
        if (it == parts_.end()) parts_.emplace(key, std::move(f));
        else {
            it->second = it->second + f;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }

    const std::map<std::pair<int, int>, Form<K>>& parts() const { return parts_; }

    Form<K> part(Bidegree d) const {
        auto it = parts_.find({d.p, d.q});
        return it == parts_.end() ? Form<K>::zero(n_, d) : it->second;
    }

    bool is_zero() const { return parts_.empty(); }

    double max_term_norm() const {
        double m = 0.0;
        for (const auto& [key, f] : parts_) m = std::max(m, f.max_term_norm());
        return m;
    }

    GradedForm scaled(cplx c) const {
        GradedForm out(n_);
        for (const auto& [key, f] : parts_) out.add(f.scaled(c));
        return out;
    }

    friend GradedForm operator+(const GradedForm& a, const GradedForm& b) {
        GradedForm out = a;
        for (const auto& [key, f] : b.parts_) out.add(f);
        return out;
    }

    friend GradedForm operator-(const GradedForm& a, const GradedForm& b) {
        return a + b.scaled(-1.0);
    }

    friend GradedForm wedge(const GradedForm& a, const GradedForm& b) {
        GradedForm out(a.n_);
        for (const auto& [ka, fa] : a.parts_)
            for (const auto& [kb, fb] : b.parts_) out.add(wedge(fa, fb));
        return out;
    }

    friend GradedForm wedge(const GradedForm& a, const Form<K>& b) {
        return wedge(a, GradedForm::from(b));
    }

    friend GradedForm wedge(const Form<K>& a, const GradedForm& b) {
        return wedge(GradedForm::from(a), b);
    }

private:
    int n_;
    std::map<std::pair<int, int>, Form<K>> parts_;
};

template <Coefficient K>
double graded_residual(const GradedForm<K>& a, const GradedForm<K>& b) {
    return (a - b).max_term_norm();
}

} // namespace hermet
