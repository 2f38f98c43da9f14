// SPDX-License-Identifier: Apache-2.0
//
// lfnoma - limited-feedback NOMA analysis and simulation for mmWave downlinks
// Copyright (C) 2026 The lfnoma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "lfnoma/analytics.hpp"

#include "lfnoma/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lfnoma {

namespace {

constexpr double kExponentClamp = 700.0;
constexpr double kKernelFloor = 1e-300;

double one_minus_exp(double z) noexcept { return -std::expm1(-z); }

// Fraction of the sector's angular measure occupied by a band.
double band_width(AngularBand band, const UserRegion& region, const Thresholds& th) noexcept
{
    switch (band) {
    case AngularBand::Inner: return 2.0 * th.theta_th;
    case AngularBand::Flanks: return std::max(0.0, region.delta() - 2.0 * th.theta_th);
    case AngularBand::Full: return region.delta();
    }
    return 0.0;
}

} // namespace

Group group_of(const CdfSpec& spec) noexcept
{
    const bool strong = spec.group == GroupRole::Strong;
    switch (spec.feedback) {
    case FeedbackType::TwoBit: return strong ? Group::StrongTwoBit : Group::WeakTwoBit;
    case FeedbackType::Angle: return strong ? Group::StrongAngle : Group::WeakAngle;
    case FeedbackType::Distance: return strong ? Group::StrongDistance : Group::WeakDistance;
    }
    return Group::StrongTwoBit;
}

double GainRegion::xi(const UserRegion& region, const Thresholds& th) const noexcept
{
    return 0.5 * (r_hi * r_hi - r_lo * r_lo) * band_width(band, region, th);
}

GainRegion gain_region(const CdfSpec& spec, const UserRegion& region, const Thresholds& th) noexcept
{
    const double lo = region.d_min();
    const double hi = region.d_max();
    const bool strong = spec.group == GroupRole::Strong;
    switch (spec.feedback) {
    case FeedbackType::TwoBit:
        return strong ? GainRegion{lo, th.d_th, AngularBand::Inner} : GainRegion{th.d_th, hi, AngularBand::Flanks};
    case FeedbackType::Angle:
        return {lo, hi, strong ? AngularBand::Inner : AngularBand::Flanks};
    case FeedbackType::Distance:
        return strong ? GainRegion{lo, th.d_th, AngularBand::Full} : GainRegion{th.d_th, hi, AngularBand::Full};
    }
    return full_region(region);
}

GainRegion gain_region(Quadrant q, const UserRegion& region, const Thresholds& th) noexcept
{
    const double lo = region.d_min();
    const double hi = region.d_max();
    switch (q) {
    case Quadrant::StrongTwoBit: return {lo, th.d_th, AngularBand::Inner};
    case Quadrant::WeakTwoBit: return {th.d_th, hi, AngularBand::Flanks};
    case Quadrant::StrongBar: return {lo, th.d_th, AngularBand::Flanks};
    case Quadrant::WeakBar: return {th.d_th, hi, AngularBand::Inner};
    }
    return full_region(region);
}

GainRegion full_region(const UserRegion& region) noexcept
{
    return {region.d_min(), region.d_max(), AngularBand::Full};
}

void QuadratureConfig::validate() const
{
    if (nodes_radial < 8 || nodes_angular < 8)
        throw std::invalid_argument("QuadratureConfig: at least 8 nodes per axis");
    if (!(refinement_tolerance > 0.0))
        throw std::invalid_argument("QuadratureConfig: refinement tolerance must be positive");
    if (max_nodes < std::max(nodes_radial, nodes_angular))
        throw std::invalid_argument("QuadratureConfig: max_nodes below the base node count");
}

GainCdf::GainCdf(const GainRegion& gain_region, const UserRegion& region, const Thresholds& th,
                 const ArrayConfig& array, const LinkBudget& budget, const QuadratureConfig& quad)
    : gain_region_(gain_region), region_(region), th_(th), array_(array), budget_(budget), quad_(quad)
{
    quad_.validate();
    array_.validate();
    budget_.validate();
    xi_ = gain_region_.xi(region_, th_);
    if (xi_ > 0.0) {
        base_ = build(quad_.nodes_radial, quad_.nodes_angular);
        fine_ = build(2 * quad_.nodes_radial, 2 * quad_.nodes_angular);
    }
}

GainCdf::Grid GainCdf::build(std::size_t nr, std::size_t nt) const
{
    Grid g;
    const double sigma2 = budget_.fading_variance;
    const double gamma = budget_.path_loss_exponent;

    const GaussLegendreRule radial = map_rule(gauss_legendre(nr), gain_region_.r_lo, gain_region_.r_hi);
    g.path_loss.reserve(nr);
    g.r_weight.reserve(nr);
    for (std::size_t i = 0; i < radial.size(); ++i) {
        const double r = radial.nodes[i];
        g.path_loss.push_back(path_loss(r, gamma) / sigma2);
        g.r_weight.push_back(radial.weights[i] * r);
    }

    const double tb = region_.theta_bar();
    const double hw = region_.half_width();
    // Panels end at the kernel nulls inside [a, b], where the integrand has its
    // sharpest features; nt is shared among them by width.
    const double m_d = array_.num_elements * array_.spacing_over_wavelength;
    const auto m = static_cast<long>(array_.num_elements);
    auto add_interval = [&](double a, double b) {
        if (!(b > a))
            return;
        std::vector<double> edges = {a};
        const double s0 = std::sin(tb);
        const auto k_lo = static_cast<long>(std::ceil((s0 - std::sin(b)) * m_d));
        const auto k_hi = static_cast<long>(std::floor((s0 - std::sin(a)) * m_d));
        for (long k = k_lo; k <= k_hi; ++k) {
            const double s = s0 - static_cast<double>(k) / m_d;
            if (k % m == 0 || std::abs(s) > 1.0)
                continue;
            const double t = std::asin(s);
            if (t > a && t < b)
                edges.push_back(t);
        }
        edges.push_back(b);
        std::sort(edges.begin(), edges.end());
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const double w = edges[p + 1] - edges[p];
            if (!(w > 0.0))
                continue;
            const auto n = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(nt * w / (b - a))));
            const GaussLegendreRule rule = map_rule(gauss_legendre(n), edges[p], edges[p + 1]);
            for (std::size_t j = 0; j < rule.size(); ++j) {
                const double f = fejer_kernel(array_, tb, rule.nodes[j]);
                g.inv_kernel.push_back(f < kKernelFloor ? std::numeric_limits<double>::infinity() : 1.0 / f);
                g.t_weight.push_back(rule.weights[j]);
            }
        }
    };
    switch (gain_region_.band) {
    case AngularBand::Inner: add_interval(tb - th_.theta_th, tb + th_.theta_th); break;
    case AngularBand::Flanks:
        add_interval(tb - hw, tb - th_.theta_th);
        add_interval(tb + th_.theta_th, tb + hw);
        break;
    case AngularBand::Full: add_interval(tb - hw, tb + hw); break;
    }
    return g;
}

double GainCdf::sum(const Grid& g, double x)
{
    double total = 0.0;
    for (std::size_t i = 0; i < g.path_loss.size(); ++i) {
        const double scale = g.path_loss[i] * x;
        double inner = 0.0;
        for (std::size_t j = 0; j < g.inv_kernel.size(); ++j) {
            const double a = scale * g.inv_kernel[j];
            // a is NaN only for PL = 0 with a vanished kernel; the gain is then
            // unbounded and the UE is never below x.
            const double v = a > kExponentClamp ? 1.0 : (a > 0.0 ? -std::expm1(-a) : 0.0);
            inner += g.t_weight[j] * v;
        }
        total += g.r_weight[i] * inner;
    }
    return total;
}

double GainCdf::integral(double x) const
{
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("GainCdf: x must be non-negative");
    if (xi_ <= 0.0 || x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return xi_;

    double coarse = sum(base_, x);
    double fine = sum(fine_, x);
    std::size_t nr = 2 * quad_.nodes_radial;
    std::size_t nt = 2 * quad_.nodes_angular;
    while (std::abs(fine - coarse) > quad_.refinement_tolerance * std::max(std::abs(fine), 1e-15 * xi_) &&
           2 * std::max(nr, nt) <= quad_.max_nodes) {
        nr *= 2;
        nt *= 2;
        coarse = fine;
        fine = sum(build(nr, nt), x);
    }
    return fine;
}

double GainCdf::operator()(double x) const
{
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("GainCdf: x must be non-negative");
    if (xi_ <= 0.0)
        return 1.0;
    return std::clamp(integral(x) / xi_, 0.0, 1.0);
}

double GainCdf::evaluate_at(double x, std::size_t nodes_radial, std::size_t nodes_angular) const
{
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("GainCdf: x must be non-negative");
    if (xi_ <= 0.0)
        return 1.0;
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    return std::clamp(sum(build(nodes_radial, nodes_angular), x) / xi_, 0.0, 1.0);
}

double ecg_cdf(double x, const CdfSpec& spec, const UserRegion& region, const Thresholds& th,
               const ArrayConfig& array, const LinkBudget& budget, const QuadratureConfig& quad)
{
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("ecg_cdf: x must be non-negative");
    return GainCdf(gain_region(spec, region, th), region, th, array, budget, quad)(x);
}

NomaThresholds noma_thresholds(const PowerSplit& split, const TargetRates& targets) noexcept
{
    NomaThresholds t;
    const double eps_w = targets.eps_weak();
    const double denom = split.beta_sq_weak - eps_w * split.beta_sq_strong;
    t.feasible = denom > 0.0 && split.beta_sq_strong > 0.0;
    if (t.feasible) {
        t.eta_weak = eps_w / denom;
        t.eta_strong = targets.eps_strong() / split.beta_sq_strong;
    } else {
        t.eta_weak = t.eta_strong = std::numeric_limits<double>::infinity();
    }
    return t;
}

NomaOutage noma_outage(const GainCdf& strong, const GainCdf& weak, double snr, const PowerSplit& split,
                       const TargetRates& targets)
{
    const NomaThresholds t = noma_thresholds(split, targets);
    if (!t.feasible || !(snr > 0.0))
        return {1.0, 1.0};
    return {strong(std::max(t.eta_weak, t.eta_strong) / snr), weak(t.eta_weak / snr)};
}

NomaOutage noma_outage(const CdfSpec& strong, const CdfSpec& weak, const Scenario& sc, const QuadratureConfig& quad)
{
    const Thresholds th = sc.thresholds();
    const GainCdf fs(gain_region(strong, sc.region, th), sc.region, th, sc.array, sc.link, quad);
    const GainCdf fw(gain_region(weak, sc.region, th), sc.region, th, sc.array, sc.link, quad);
    return noma_outage(fs, fw, sc.link.snr_linear, sc.split, sc.targets);
}

double sut_outage(const GainCdf& cdf, double snr, const TargetRates& targets)
{
    if (!(snr > 0.0))
        return 1.0;
    return cdf(targets.eps_sut() / snr);
}

double sut_outage(const CdfSpec& spec, const Scenario& sc, const QuadratureConfig& quad)
{
    const Thresholds th = sc.thresholds();
    const GainCdf f(gain_region(spec, sc.region, th), sc.region, th, sc.array, sc.link, quad);
    return sut_outage(f, sc.link.snr_linear, sc.targets);
}

QuadrantMasses QuadrantMasses::from(double p_theta, double p_d) noexcept
{
    QuadrantMasses m;
    m.mass[static_cast<std::size_t>(Quadrant::StrongTwoBit)] = p_theta * p_d;
    m.mass[static_cast<std::size_t>(Quadrant::WeakTwoBit)] = (1.0 - p_theta) * (1.0 - p_d);
    m.mass[static_cast<std::size_t>(Quadrant::StrongBar)] = (1.0 - p_theta) * p_d;
    m.mass[static_cast<std::size_t>(Quadrant::WeakBar)] = p_theta * (1.0 - p_d);
    return m;
}

double OccurrenceProbs::total() const noexcept
{
    double s = 0.0;
    for (double v : p)
        s += v;
    return s;
}

OccurrenceProbs occurrence(StrategyKind kind, double mu, double p_theta, double p_d) noexcept
{
    OccurrenceProbs o;
    o.kind = kind;
    const QuadrantMasses m = QuadrantMasses::from(p_theta, p_d);
    const double a = mu * m[Quadrant::StrongTwoBit];
    const double b = mu * m[Quadrant::WeakTwoBit];
    // Product forms keep empty-group probabilities exactly zero.
    auto E = [](double z) { return std::exp(-z); };
    auto G = [](double z) { return -std::expm1(-z); };

    if (kind == StrategyKind::TwoBit) {
        o[Branch::NomaTwoBit] = G(a) * G(b);
        o[Branch::SutStrongTwoBit] = E(b) * G(a);
        o[Branch::SutWeakTwoBit] = E(a) * G(b);
        o[Branch::None] = E(a + b);
        return o;
    }

    const double ps = uses_angle_bit(kind) ? p_theta : p_d;
    const double s = mu * ps, w = mu * (1.0 - ps);
    if (!is_combined(kind)) {
        o[Branch::NomaOneBit] = G(s) * G(w);
        o[Branch::SutStrongOneBit] = E(w) * G(s);
        o[Branch::SutWeakOneBit] = E(s) * G(w);
        o[Branch::None] = E(mu);
        return o;
    }

    o[Branch::NomaTwoBit] = G(a) * G(b);
    o[Branch::NomaOneBit] = G(s) * G(w) - G(a) * G(b);
    o[Branch::SutStrongTwoBit] = E(w) * G(a);
    o[Branch::SutStrongOneBit] = E(w + a) * G(std::max(0.0, s - a));
    o[Branch::SutWeakOneBit] = E(s) * G(w);
    o[Branch::None] = E(mu);
    return o;
}

std::vector<Branch> branches_of(StrategyKind kind)
{
    switch (kind) {
    case StrategyKind::TwoBit:
        return {Branch::NomaTwoBit, Branch::SutStrongTwoBit, Branch::SutWeakTwoBit, Branch::None};
    case StrategyKind::OneBitAngle:
    case StrategyKind::OneBitDistance:
        return {Branch::NomaOneBit, Branch::SutStrongOneBit, Branch::SutWeakOneBit, Branch::None};
    case StrategyKind::CombinedAngle:
    case StrategyKind::CombinedDistance:
        return {Branch::NomaTwoBit,      Branch::NomaOneBit,    Branch::SutStrongTwoBit,
                Branch::SutStrongOneBit, Branch::SutWeakOneBit, Branch::None};
    }
    return {};
}

BranchOutages branch_outages(StrategyKind kind, const Scenario& sc, const QuadratureConfig& quad, BranchModel model)
{
    const Thresholds th = sc.thresholds();
    const double snr = sc.link.snr_linear;
    const NomaThresholds eta = noma_thresholds(sc.split, sc.targets);
    const double inf = std::numeric_limits<double>::infinity();
    const double xs = eta.feasible && snr > 0.0 ? std::max(eta.eta_weak, eta.eta_strong) / snr : inf;
    const double xw = eta.feasible && snr > 0.0 ? eta.eta_weak / snr : inf;
    const double xu = snr > 0.0 ? sc.targets.eps_sut() / snr : inf;

    auto make = [&](const GainRegion& r) { return GainCdf(r, sc.region, th, sc.array, sc.link, quad); };
    auto spec_cdf = [&](GroupRole g, FeedbackType f) { return make(gain_region(CdfSpec{g, f}, sc.region, th)); };

    BranchOutages out;
    if (kind == StrategyKind::TwoBit || is_combined(kind)) {
        const GainCdf s2b = spec_cdf(GroupRole::Strong, FeedbackType::TwoBit);
        const GainCdf w2b = spec_cdf(GroupRole::Weak, FeedbackType::TwoBit);
        out[Branch::NomaTwoBit].strong = s2b(xs);
        out[Branch::NomaTwoBit].weak = w2b(xw);
        out[Branch::SutStrongTwoBit].sut = s2b(xu);
        if (kind == StrategyKind::TwoBit)
            out[Branch::SutWeakTwoBit].sut = w2b(xu);
    }
    if (kind == StrategyKind::TwoBit)
        return out;

    const FeedbackType fb = uses_angle_bit(kind) ? FeedbackType::Angle : FeedbackType::Distance;
    const GainCdf st = spec_cdf(GroupRole::Strong, fb);
    const GainCdf wt = spec_cdf(GroupRole::Weak, fb);
    out[Branch::SutWeakOneBit].sut = wt(xu);

    if (!is_combined(kind) || model == BranchModel::GroupMarginal) {
        out[Branch::NomaOneBit].strong = st(xs);
        out[Branch::NomaOneBit].weak = wt(xw);
        out[Branch::SutStrongOneBit].sut = st(xu);
        return out;
    }

    // Once two-bit pairing has failed, the one-bit stage can only schedule
    // particular quadrants: X joins S2B in the strong group, Y joins W2B in the
    // weak group. With A, B, X, Y independent Poisson counts, C-NOMA is either
    //   (i)  A = 0, X >= 1, B + Y >= 1: strong from X, weak from W2B u Y;
    //   (ii) A >= 1, B = 0, Y >= 1:     weak from Y, strong from S2B u X.
    const Quadrant qx = kind == StrategyKind::CombinedAngle ? Quadrant::WeakBar : Quadrant::StrongBar;
    const Quadrant qy = kind == StrategyKind::CombinedAngle ? Quadrant::StrongBar : Quadrant::WeakBar;
    const QuadrantMasses m = QuadrantMasses::from(sc.p_theta(), sc.p_d());
    const double mu = sc.mu();
    const double a = mu * m[Quadrant::StrongTwoBit];
    const double b = mu * m[Quadrant::WeakTwoBit];
    const double x = mu * m[qx];
    const double y = mu * m[qy];

    const GainCdf fx = make(gain_region(qx, sc.region, th));
    const GainCdf fy = make(gain_region(qy, sc.region, th));
    const GainCdf fs2b = spec_cdf(GroupRole::Strong, FeedbackType::TwoBit);

    const double p_i = std::exp(-a) * one_minus_exp(x) * one_minus_exp(b + y);
    const double p_ii = one_minus_exp(a) * std::exp(-b) * one_minus_exp(y);
    const double q = a > 0.0 ? a / (a + x) * one_minus_exp(a + x) / one_minus_exp(a) : 0.0;
    const double p = p_i + p_ii;

    if (p > 0.0) {
        const double fx_s = fx(xs);
        const double strong = p_i * fx_s + p_ii * (q * fs2b(xs) + (1.0 - q) * fx_s);
        const double weak = p_i * wt(xw) + p_ii * fy(xw);
        out[Branch::NomaOneBit].strong = strong / p;
        out[Branch::NomaOneBit].weak = weak / p;
    }
    out[Branch::SutStrongOneBit].sut = fx(xu);
    return out;
}

RateReport hybrid_rate(StrategyKind kind, const OccurrenceProbs& occ, const BranchOutages& outages,
                       const TargetRates& targets, double mu)
{
    RateReport r;
    r.kind = kind;
    r.occurrence = occ;
    r.outages = outages;

    const double pr_k2 = 1.0 - std::exp(-mu) * (1.0 + mu);
    const double pr_k1 = one_minus_exp(mu);

    for (Branch br : branches_of(kind)) {
        const auto i = static_cast<std::size_t>(br);
        const BranchOutage& o = outages[br];
        double cond = 0.0;
        switch (br) {
        case Branch::NomaTwoBit:
        case Branch::NomaOneBit:
            cond = (1.0 - o.strong) * targets.r_strong + (1.0 - o.weak) * targets.r_weak;
            break;
        case Branch::None: break;
        default:
            cond = (1.0 - o.sut) * targets.r_sut;
            r.rate_sut[i] = pr_k1 * cond;
            break;
        }
        r.conditional_rate[i] = cond;
        r.hybrid += occ[br] * cond;
    }
    const Branch noma = kind == StrategyKind::TwoBit ? Branch::NomaTwoBit : Branch::NomaOneBit;
    r.rate_noma = pr_k2 * r.conditional_rate[static_cast<std::size_t>(noma)];
    return r;
}

RateReport analytic_hybrid_rate(StrategyKind kind, const Scenario& sc, const QuadratureConfig& quad)
{
    sc.validate();
    const double mu = sc.mu();
    const OccurrenceProbs occ = occurrence(kind, mu, sc.p_theta(), sc.p_d());
    RateReport r = hybrid_rate(kind, occ, branch_outages(kind, sc, quad, BranchModel::Exact), sc.targets, mu);
    if (is_combined(kind)) {
        const BranchOutages gm = branch_outages(kind, sc, quad, BranchModel::GroupMarginal);
        r.hybrid_group_marginal = hybrid_rate(kind, occ, gm, sc.targets, mu).hybrid;
    }
    return r;
}

} // namespace lfnoma
