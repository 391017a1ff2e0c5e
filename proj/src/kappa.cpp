#include "wsbr/certify.hpp"
#include "wsbr/errors.hpp"
#include "wsbr/pair_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wsbr {

namespace {

void absorb(CertificateReport& into, const CertificateReport& part)
{
    for (Check c : part.checks) {
        c.name = part.lemma_id + "/" + c.name;
        into.checks.push_back(std::move(c));
    }
}

}  // namespace

CertificateReport certify_kappa(const Roughness& r, const KappaOptions& opt)
{
    KappaOptions inner = opt;
    inner.enforce_range = false;
    inner.cases.enforce_range = false;

    CertificateReport rep;
    rep.lemma_id = "transversality";
    rep.kappa = r.kappa();
    rep.config = {opt.terms, opt.grid, opt.cases.config.prefix_depth};

    absorb(rep, certify_g_roots(r, inner));
    absorb(rep, certify_aux('k', r, inner));
    absorb(rep, certify_aux('l', r, inner));
    for (const CaseSpec& c : table1())
        absorb(rep, certify_case(c, r, inner.cases));
    const double sup_g = certified_sup_abs_g(r, 0);
    for (const CaseSpec& c : table1()) {
        const BoundedValue v = value_at_test_point(c, r, 3, sup_g, false);
        Check t = point_check("test_point/case_" + std::to_string(c.id), kTestPoint, v, -1);
        t.note = "upper end of S(xi,.55) - S(eta,.55) over the case";
        rep.checks.push_back(t);
    }
    rep.finalize();
    if (opt.enforce_range && (r.kappa() < kCertKappaMin || r.kappa() > kCertKappaMax)) {
        rep.verdict = Verdict::inconclusive;
        rep.note = "kappa outside the stated range [0.5, 0.56]; computed_verdict holds the result of the checks";
    }
    return rep;
}

Kappa0Estimate estimate_kappa0(double tol, const KappaOptions& opt)
{
    if (tol < 1e-4)
        throw DomainError("estimate_kappa0: tol must be >= 1e-4");
    Kappa0Estimate est;
    auto certified = [&](double k) {
        const Verdict v = certify_kappa(Roughness::from_kappa(k), opt).computed_verdict;
        est.evaluations.emplace_back(k, v);
        return v == Verdict::pass;
    };
    double lo = 0.5, hi = kEnvelopeKappaMax;
    if (!certified(lo)) {
        est.interval = {lo, lo};
        return est;
    }
    if (certified(hi)) {
        est.interval = {hi, hi};
        return est;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (certified(mid))
            lo = mid;
        else
            hi = mid;
    }
    est.interval = {lo, hi};
    return est;
}

InfVResult inf_V_sample(const Roughness& r, int n, std::uint64_t seed, int grid, int terms)
{
    if (n < 1 || grid < 1)
        throw DomainError("inf_V_sample: n and grid must be positive");
    constexpr int chunk = 256;
    InfVResult res;
    res.value = std::numeric_limits<double>::infinity();
    for (int start = 0, id = 0; start < n; start += chunk, ++id) {
        Stream s(seed, static_cast<std::uint64_t>(id));
        const int m = std::min(chunk, n - start);
        for (int p = 0; p < m; ++p) {
            const auto [xi, eta] = sample_macroscopic_words(s);
            const PairProfile prof(xi, eta, r, std::min(terms, PairProfile::kMaxTerms));
            res.width = std::max(res.width, prof.tail_f() + prof.tail_df());
            for (int i = 0; i <= grid; ++i) {
                double f, df;
                prof.f_df(static_cast<double>(i) / grid, f, df);
                res.value = std::min(res.value, std::hypot(f, df));
            }
        }
    }
    return res;
}

}  // namespace wsbr
