#include "alphaforge/rootcount.hpp"

#include <algorithm>
#include <stdexcept>

namespace alphaforge::rootcount {

namespace {

constexpr u64 kScanLimit = u64(1) << 20;       // residue scans / candidate lifting below this
constexpr size_t kLiftSetBudget = 2'000'000;   // switch to the valuation recursion beyond

using Residues = std::vector<u64>;  // polynomial mod m, ascending coefficients

Residues reduce_mod(const std::vector<mpz_class>& coeffs, u64 m) {
    Residues r(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i)
        r[i] = mpz_fdiv_ui(coeffs[i].get_mpz_t(), m);
    return r;
}

Residues reversed(const Residues& a) { return Residues(a.rbegin(), a.rend()); }

// Coefficients may exceed m (they are stored mod a larger p^k).
u64 eval_mod(const Residues& f, u64 x, u64 m) {
    u64 acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = addmod(mulmod(acc, x, m), f[i] % m, m);
    return acc;
}

void trim_mod(Residues& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// ---- F_p[x] arithmetic for root counting/finding at large p ----

Residues poly_rem(Residues a, const Residues& g, u64 p) {
    // g monic
    const size_t dg = g.size() - 1;
    while (a.size() > dg) {
        u64 q = a.back();
        size_t off = a.size() - 1 - dg;
        if (q)
            for (size_t i = 0; i < dg; ++i)
                a[off + i] = submod(a[off + i], mulmod(q, g[i], p), p);
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

Residues make_monic(Residues a, u64 p) {
    trim_mod(a);
    if (a.empty()) return a;
    u64 inv = invmod(a.back(), p);
    if (inv != 1)
        for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

Residues poly_mulrem(const Residues& a, const Residues& b, const Residues& g, u64 p) {
    if (a.empty() || b.empty()) return {};
    Residues c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
    }
    trim_mod(c);
    if (c.empty()) return c;
    return poly_rem(std::move(c), g, p);
}

Residues poly_gcd(Residues a, Residues b, u64 p) {
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        b = make_monic(std::move(b), p);
        a = poly_rem(std::move(a), b, p);
        std::swap(a, b);
    }
    return make_monic(std::move(a), p);
}

// base^e mod (g, p); base reduced mod g
Residues poly_powmod(Residues base, u64 e, const Residues& g, u64 p) {
    Residues r{1};
    while (e) {
        if (e & 1) r = r.empty() ? r : poly_mulrem(r, base, g, p);
        e >>= 1;
        if (e) base = poly_mulrem(base, base, g, p);
    }
    return r;
}

// Roots of a product of distinct monic linear factors, by deterministic
// equal-degree splitting with shifts 0,1,2,...
void split_linear_product(const Residues& g, u64 p, std::vector<u64>& out) {
    size_t d = g.size() - 1;
    if (d == 0) return;
    if (d == 1) {
        out.push_back(g[0] ? p - g[0] : 0);
        return;
    }
    if (d == 2) {
        // x^2 + bx + c with two distinct roots
        u64 b = g[1], c = g[0];
        u64 disc = submod(mulmod(b, b, p), mulmod(4 % p, c, p), p);
        u64 s = sqrtmod(disc, p);
        u64 inv2 = invmod(2 % p, p);
        u64 r1 = mulmod(submod(s, b, p), inv2, p);
        u64 r2 = mulmod(submod(p - s, b, p), inv2, p);
        out.push_back(r1);
        out.push_back(r2);
        return;
    }
    for (u64 delta = 0;; ++delta) {
        // gcd((x+delta)^((p-1)/2) - 1, g)
        Residues base{delta % p, 1};
        Residues pw = poly_powmod(std::move(base), (p - 1) / 2, g, p);
        if (pw.empty())
            pw = Residues{p - 1};  // 0 - 1
        else
            pw[0] = submod(pw[0], 1, p);
        trim_mod(pw);
        Residues h = poly_gcd(pw, g, p);
        if (h.size() > 1 && h.size() < g.size()) {
            // quot = g / h, long division of monic polynomials
            Residues rem = g;
            const size_t dh = h.size() - 1;
            Residues quot(rem.size() - dh, 0);
            for (size_t shift = quot.size(); shift-- > 0;) {
                u64 coef = rem[shift + dh];
                quot[shift] = coef;
                if (coef)
                    for (size_t j = 0; j <= dh; ++j)
                        rem[shift + j] = submod(rem[shift + j], mulmod(coef, h[j], p), p);
            }
            split_linear_product(h, p, out);
            split_linear_product(quot, p, out);
            return;
        }
    }
}

std::vector<u64> roots_mod_p_impl(Residues fp, u64 p) {
    trim_mod(fp);
    std::vector<u64> out;
    if (fp.empty()) {  // f = 0 mod p: every residue
        if (p > kScanLimit)
            throw std::out_of_range("roots_mod_p: all-residue root set too large");
        out.resize(p);
        for (u64 a = 0; a < p; ++a) out[a] = a;
        return out;
    }
    if (fp.size() == 1) return out;
    if (p <= kScanLimit) {
        for (u64 a = 0; a < p; ++a)
            if (eval_mod(fp, a, p) == 0) out.push_back(a);
        return out;
    }
    Residues g = make_monic(fp, p);
    // gcd(x^p - x, g): product of the distinct linear factors
    Residues xp = poly_powmod(Residues{0, 1}, p, g, p);
    // xp - x
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = submod(xp[1], 1, p);
    trim_mod(xp);
    Residues lin = poly_gcd(xp, g, p);
    if (lin.size() <= 1) return out;
    split_linear_product(lin, p, out);
    std::sort(out.begin(), out.end());
    return out;
}

unsigned val_of_residue(u64 c, u64 p, unsigned cap) {
    if (c == 0) return cap;
    unsigned v = 0;
    while (v < cap && c % p == 0) { c /= p; ++v; }
    return v;
}

// Taylor shift then scale: returns g with g(Y) = f(r + pY) mod p^k.
Residues shift_and_scale(const Residues& f, u64 r, u64 p, u64 P, unsigned k) {
    const size_t n = f.size();
    // first shift: b = f(r + Y) via repeated synthetic (Horner) passes
    Residues b = f;
    for (size_t i = 0; i < n; ++i) b[i] %= P;
    Residues shifted(n, 0);
    // shifted[j] = sum_{i>=j} C(i,j) f_i r^(i-j): compute by n Horner divisions
    Residues work = b;
    for (size_t j = 0; j < n; ++j) {
        // divide work by (x - r): remainder = work(r), quotient replaces work
        u64 rem = 0;
        for (size_t i = work.size(); i-- > 0;) {
            u64 t = addmod(mulmod(rem, r, P), work[i], P);
            work[i] = rem;
            rem = t;
        }
        shifted[j] = rem;
        // the quotient occupies work[0..n-2-j]; drop the stale leading slot
        if (!work.empty()) work.pop_back();
        if (work.empty()) {
            for (size_t jj = j + 1; jj < n; ++jj) shifted[jj] = 0;
            break;
        }
    }
    // scale: g_j = shifted_j * p^j mod P (zero once j >= k)
    u64 pj = 1;
    for (size_t j = 0; j < n; ++j) {
        if (j >= k) {
            shifted[j] = 0;
            continue;
        }
        shifted[j] = mulmod(shifted[j], pj, P);
        pj = (j + 1 >= k) ? 0 : pj * p;
    }
    return shifted;
}

struct CountBudget {
    long nodes = 200'000;
    void spend() {
        if (--nodes < 0)
            throw std::out_of_range("root counting: recursion budget exceeded");
    }
};

u64 count_mod_pk_recursive(Residues f, u64 p, unsigned k, CountBudget& budget);

// Solutions Y mod p^(k-1) of g(Y) = 0 mod p^k, where g has valuation >= 1
// in every coefficient (g came from a substitution Y -> r + pY or Y -> pY).
u64 count_substituted(Residues g, u64 p, unsigned k, CountBudget& budget) {
    unsigned m = k;
    for (u64 c : g) m = std::min(m, val_of_residue(c, p, k));
    if (m >= k) return checked_pow(p, k - 1);
    u64 pm = checked_pow(p, m);
    u64 Pm = checked_pow(p, k - m);
    for (auto& c : g) c = (c / pm) % Pm;
    u64 sub = count_mod_pk_recursive(std::move(g), p, k - m, budget);
    return sub * checked_pow(p, m - 1);
}

// #{x mod p^k : f(x) = 0 mod p^k}; f given mod p^k, k >= 1.
u64 count_mod_pk_recursive(Residues f, u64 p, unsigned k, CountBudget& budget) {
    budget.spend();
    const u64 P = checked_pow(p, k);
    unsigned m0 = k;
    for (u64 c : f) m0 = std::min(m0, val_of_residue(c, p, k));
    if (m0 >= k) return P;
    if (m0 > 0) {
        u64 pm = checked_pow(p, m0);
        u64 Pm = checked_pow(p, k - m0);
        for (auto& c : f) c = (c / pm) % Pm;
        return count_mod_pk_recursive(std::move(f), p, k - m0, budget) * pm;
    }
    Residues fp(f.size());
    for (size_t i = 0; i < f.size(); ++i) fp[i] = f[i] % p;
    std::vector<u64> roots = roots_mod_p_impl(fp, p);
    if (k == 1) return roots.size();
    // derivative mod p
    Residues dmod(fp.size() > 1 ? fp.size() - 1 : 1, 0);
    for (size_t i = 1; i < fp.size(); ++i) dmod[i - 1] = mulmod(fp[i], i % p, p);
    u64 total = 0;
    for (u64 r : roots) {
        if (eval_mod(dmod, r, p) != 0) {
            total += 1;  // simple root: unique Hensel lift mod p^k
        } else {
            Residues g = shift_and_scale(f, r, p, P, k);
            total += count_substituted(std::move(g), p, k, budget);
        }
    }
    return total;
}

// Spec-contract candidate lifting for p within scan range: roots mod p^j are
// lifted via the p candidates r + t p^(j-1), each tested exactly.
// Returns false if the working set exceeds the budget (caller falls back).
bool count_by_lifting(const std::vector<mpz_class>& coeffs, u64 p, unsigned k,
                      bool projective, std::vector<u64>& counts_out) {
    counts_out.clear();
    const u64 P = checked_pow(p, k);
    Residues f = reduce_mod(coeffs, P);
    if (projective) f = reversed(f);
    std::vector<u64> cur;
    // level 1
    u64 p1 = p;
    if (projective) {
        if (eval_mod(f, 0, p1) == 0) cur.push_back(0);
    } else {
        Residues fp(f.size());
        for (size_t i = 0; i < f.size(); ++i) fp[i] = f[i] % p;
        trim_mod(fp);
        if (fp.empty()) {
            for (u64 a = 0; a < p; ++a) cur.push_back(a);
        } else {
            for (u64 a = 0; a < p; ++a)
                if (eval_mod(fp, a, p1) == 0) cur.push_back(a);
        }
    }
    counts_out.push_back(cur.size());
    u64 pj = p;
    for (unsigned j = 2; j <= k; ++j) {
        u64 pj1 = pj * p;
        std::vector<u64> next;
        next.reserve(cur.size());
        for (u64 r : cur) {
            for (u64 t = 0; t < p; ++t) {
                u64 cand = r + t * pj;
                if (eval_mod(f, cand, pj1) == 0) {
                    next.push_back(cand);
                    if (next.size() > kLiftSetBudget) return false;
                }
            }
        }
        cur = std::move(next);
        counts_out.push_back(cur.size());
        pj = pj1;
    }
    return true;
}

u64 projective_count(const std::vector<mpz_class>& coeffs, u64 p, unsigned k,
                     CountBudget& budget) {
    const u64 P = checked_pow(p, k);
    Residues fbar = reversed(reduce_mod(coeffs, P));
    // fbar(0) = lc(f): no projective roots unless p divides it
    if ((fbar[0] % p) != 0) return 0;
    if (k == 1) return 1;
    // substitute y = p z
    Residues g = std::move(fbar);
    u64 pj = 1;
    for (size_t j = 0; j < g.size(); ++j) {
        if (j >= k) {
            g[j] = 0;
            continue;
        }
        g[j] = mulmod(g[j], pj, P);
        pj = (j + 1 >= k) ? 0 : pj * p;
    }
    return count_substituted(std::move(g), p, k, budget);
}

}  // namespace

unsigned val_p(const mpz_class& n, u64 p) {
    if (n == 0) throw std::domain_error("val_p: n must be nonzero");
    mpz_class m = abs(n);
    unsigned v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

std::vector<u64> roots_mod_p(const Polynomial& f, u64 p) {
    return roots_mod_p_impl(reduce_mod(f.coeffs(), p), p);
}

u64 count_roots_mod_p(const Polynomial& f, u64 p) {
    Residues fp = reduce_mod(f.coeffs(), p);
    trim_mod(fp);
    if (fp.empty()) return p;
    if (fp.size() == 1) return 0;
    // scan only tiny p; the x^p powering gcd is cheaper long before 2^20
    if (p < 64) {
        u64 n = 0;
        for (u64 a = 0; a < p; ++a)
            if (eval_mod(fp, a, p) == 0) ++n;
        return n;
    }
    if (fp.size() == 2) return 1;
    Residues g = make_monic(fp, p);
    Residues xp = poly_powmod(Residues{0, 1}, p, g, p);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = submod(xp[1], 1, p);
    trim_mod(xp);
    Residues lin = poly_gcd(xp, g, p);
    return lin.empty() ? 0 : lin.size() - 1;
}

u64 affine_roots_mod_pk(const Polynomial& f, u64 p, unsigned k) {
    if (k == 0) throw std::domain_error("affine_roots_mod_pk: k >= 1 required");
    checked_pow(p, k);  // range check
    if (p <= kScanLimit) {
        std::vector<u64> counts;
        if (count_by_lifting(f.coeffs(), p, k, false, counts))
            return counts.back();
    }
    CountBudget budget;
    u64 P = checked_pow(p, k);
    return count_mod_pk_recursive(reduce_mod(f.coeffs(), P), p, k, budget);
}

u64 n_pk(const Polynomial& f, u64 p, unsigned k, LiftPolicy policy) {
    if (k == 0) throw std::domain_error("n_pk: k >= 1 required");
    checked_pow(p, k);
    const mpz_class& D = f.discriminant();
    bool lemma_ok = D != 0 && !mpz_divisible_ui_p(D.get_mpz_t(), p) &&
                    !mpz_divisible_ui_p(f.leading().get_mpz_t(), p);
    if (policy == LiftPolicy::automatic && lemma_ok && k > 1)
        return count_roots_mod_p(f, p);  // Lemma 2.1: n_{p^k} = n_p, no projective part
    if (k == 1) {
        u64 affine;
        if (p <= kScanLimit) {
            std::vector<u64> counts;
            if (count_by_lifting(f.coeffs(), p, 1, false, counts))
                affine = counts.back();
            else
                affine = affine_roots_mod_pk(f, p, 1);
        } else {
            affine = count_roots_mod_p(f, p);
        }
        return affine + (mpz_divisible_ui_p(f.leading().get_mpz_t(), p) ? 1 : 0);
    }
    u64 affine = affine_roots_mod_pk(f, p, k);
    u64 proj;
    if (p <= kScanLimit) {
        std::vector<u64> counts;
        if (count_by_lifting(f.coeffs(), p, k, true, counts)) {
            proj = counts.back();
        } else {
            CountBudget budget;
            proj = projective_count(f.coeffs(), p, k, budget);
        }
    } else {
        CountBudget budget;
        proj = projective_count(f.coeffs(), p, k, budget);
    }
    return affine + proj;
}

namespace detail {

u64 affine_count_valuation(const Polynomial& f, u64 p, unsigned k) {
    if (k == 0) throw std::domain_error("affine_count_valuation: k >= 1 required");
    CountBudget budget;
    u64 P = checked_pow(p, k);
    return count_mod_pk_recursive(reduce_mod(f.coeffs(), P), p, k, budget);
}

u64 projective_count_valuation(const Polynomial& f, u64 p, unsigned k) {
    if (k == 0) throw std::domain_error("projective_count_valuation: k >= 1 required");
    CountBudget budget;
    return projective_count(f.coeffs(), p, k, budget);
}

}  // namespace detail

RootCountProfile profile(const Polynomial& f, u64 p, unsigned k_max, LiftPolicy policy) {
    if (k_max == 0) throw std::domain_error("profile: k_max >= 1 required");
    RootCountProfile out;
    out.p = p;
    const mpz_class& D = f.discriminant();
    out.stabilized = D != 0 && !mpz_divisible_ui_p(D.get_mpz_t(), p);
    // degree-1 Disc is 1 by convention; stabilization additionally needs
    // p coprime to the content there (gcd(a,b) = 1 in Prop 3.2)
    if (f.degree() == 1 && out.stabilized) {
        mpz_class c = f.content();
        if (mpz_divisible_ui_p(c.get_mpz_t(), p)) out.stabilized = false;
    }
    bool shortcut = policy == LiftPolicy::automatic && out.stabilized &&
                    !mpz_divisible_ui_p(f.leading().get_mpz_t(), p);
    if (shortcut) {
        u64 n1 = n_pk(f, p, 1, policy);
        out.counts.assign(k_max, n1);
        return out;
    }
    out.counts.reserve(k_max);
    for (unsigned k = 1; k <= k_max; ++k) out.counts.push_back(n_pk(f, p, k, policy));
    return out;
}

}  // namespace alphaforge::rootcount
