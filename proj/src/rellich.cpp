#include "rankone/rellich.hpp"

#include "rankone/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rankone {

namespace {

constexpr double kLinearTolerance = 1e-9;

void require_exponent(double p)
{
    if (!(p >= 1.0)) {
        throw InvalidArgument("exponent p must be >= 1");
    }
}

} // namespace

double gamma_p(double p)
{
    require_exponent(p);
    return std::isinf(p) ? -1.0 : 2.0 / p - 1.0;
}

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::kPhi:
        return "phi";
    case ModelKind::kBigPhiPlus:
        return "big_phi_plus";
    case ModelKind::kBigPhiMinus:
        return "big_phi_minus";
    case ModelKind::kMode:
        return "mode";
    }
    return "unknown";
}

struct ModelEigenfunction::Profile {
    virtual ~Profile() = default;
    virtual double log_abs(double t) const = 0;
};

namespace {

struct SphericalProfile final : ModelEigenfunction::Profile {
    SphericalProfile(const RankOneSpace& space, SpectralParam lambda)
        : series(space, lambda)
    {
    }
    double log_abs(double t) const override { return series.log_abs(t); }
    SphericalPhiSeries series;
};

struct BigPhiProfile final : ModelEigenfunction::Profile {
    BigPhiProfile(const RankOneSpace& space, SpectralParam lambda)
        : series(space, lambda)
    {
    }
    double log_abs(double t) const override { return series.log_abs(t); }
    HarishChandraSeries series;
};

struct ModeProfile final : ModelEigenfunction::Profile {
    ModeProfile(const RankOneSpace& space, Complex s, ModeIndex mode)
        : series(space, s, mode)
    {
    }
    double log_abs(double t) const override
    {
        return series.exponent().real() * t + std::log(std::abs(series.scaled(t)));
    }
    ModeSeries series;
};

} // namespace

ModelEigenfunction::ModelEigenfunction(ModelKind kind, const RankOneSpace& space, SpectralParam lambda,
                                       std::shared_ptr<const Profile> profile)
    : kind_(kind)
    , space_(space)
    , lambda_(lambda)
    , profile_(std::move(profile))
{
}

ModelEigenfunction ModelEigenfunction::spherical(const RankOneSpace& space, SpectralParam lambda)
{
    return {ModelKind::kPhi, space, lambda, std::make_shared<SphericalProfile>(space, lambda)};
}

ModelEigenfunction ModelEigenfunction::big_phi_plus(const RankOneSpace& space, SpectralParam lambda)
{
    return {ModelKind::kBigPhiPlus, space, lambda, std::make_shared<BigPhiProfile>(space, lambda)};
}

ModelEigenfunction ModelEigenfunction::big_phi_minus(const RankOneSpace& space, SpectralParam lambda)
{
    lambda.require_admissible();
    return {ModelKind::kBigPhiMinus, space, lambda, std::make_shared<BigPhiProfile>(space, lambda.negated())};
}

ModelEigenfunction ModelEigenfunction::mode(const RankOneSpace& space, SpectralParam lambda, ModeIndex mode,
                                            FrameBranch branch)
{
    lambda.require_admissible();
    Complex s = branch == FrameBranch::kPlus ? lambda.value() : -lambda.value();
    ModelEigenfunction f(ModelKind::kMode, space, lambda, std::make_shared<ModeProfile>(space, s, mode));
    f.mode_ = mode;
    f.branch_ = branch;
    return f;
}

double ModelEigenfunction::log_abs(double t) const
{
    return profile_->log_abs(t);
}

double LogMass::log() const
{
    return std::log(mantissa) + exponent;
}

LogMass annulus_mass(const ModelEigenfunction& f, double p, double R, double tol)
{
    require_exponent(p);
    if (std::isinf(p)) {
        throw InvalidArgument("annulus mass needs finite p");
    }
    if (!(R >= 1.0)) {
        throw InvalidArgument("annulus mass needs R >= 1");
    }
    const RankOneSpace& space = f.space();
    auto log_integrand = [&](double t) { return p * f.log_abs(t) + log_jacobian(space, t); };

    // Samples resolve the oscillation (period pi/|Re lambda|) at >= 16 points.
    const double re = std::abs(f.lambda().re());
    int samples = 33;
    if (re > 0.0) {
        samples = std::max(samples, int(std::ceil(16.0 * R * re / M_PI)) + 1);
    }
    std::vector<double> ts(samples);
    std::vector<double> profile(samples);
    double shift = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        ts[i] = R + R * i / (samples - 1.0);
        profile[i] = f.log_abs(ts[i]);
        shift = std::max(shift, p * profile[i] + log_jacobian(space, ts[i]));
    }
    if (!std::isfinite(shift)) {
        throw NumericalFailure("annulus integrand vanishes or overflows on the sample points");
    }

    // Zeros of an oscillating profile put kinks into |g|^p; split at the
    // local minima of log|g| minus its least-squares trend (the exponential
    // trend and the Jacobian would mask the dips).
    double mean_t = 0.0;
    double mean_v = 0.0;
    for (int i = 0; i < samples; ++i) {
        mean_t += ts[i] / samples;
        mean_v += profile[i] / samples;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (int i = 0; i < samples; ++i) {
        sxy += (ts[i] - mean_t) * (profile[i] - mean_v);
        sxx += (ts[i] - mean_t) * (ts[i] - mean_t);
    }
    const double trend = sxy / sxx;
    auto log_profile = [&](double t) { return f.log_abs(t) - trend * t; };
    for (int i = 0; i < samples; ++i) {
        profile[i] -= trend * ts[i];
    }
    std::vector<double> breaks = {R};
    auto split_near = [&](double lo, double hi) {
        auto [t_min, v_min] = boost::math::tools::brent_find_minima(log_profile, lo, hi, 40);
        (void)v_min;
        if (t_min > breaks.back() + 1e-9 * R && t_min < 2.0 * R - 1e-9 * R) {
            breaks.push_back(t_min);
        }
    };
    if (profile[0] < profile[1]) {
        split_near(ts[0], ts[1]); // dip before the first interior sample
    }
    for (int i = 1; i + 1 < samples; ++i) {
        if (profile[i] < profile[i - 1] && profile[i] <= profile[i + 1]) {
            split_near(ts[i - 1], ts[i + 1]);
        }
    }
    if (profile[samples - 1] < profile[samples - 2]) {
        split_near(ts[samples - 2], ts[samples - 1]);
    }
    breaks.push_back(2.0 * R);

    // The tolerance is global: a first 31-point pass sizes each piece, and a
    // piece carrying a tiny share of the mass gets a looser relative target.
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto g = [&](double t) { return std::exp(log_integrand(t) - shift); };
    const std::size_t pieces = breaks.size() - 1;
    std::vector<double> rough(pieces);
    double rough_total = 0.0;
    for (std::size_t i = 0; i < pieces; ++i) {
        double piece_l1 = 0.0;
        GK::integrate(g, breaks[i], breaks[i + 1], 0, 0.0, nullptr, &piece_l1);
        rough[i] = piece_l1;
        rough_total += piece_l1;
    }
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
    for (std::size_t i = 0; i < pieces; ++i) {
        double piece_tol = rough[i] > 0.0 ? tol * rough_total / (double(pieces) * rough[i]) : 1.0;
        piece_tol = std::clamp(piece_tol, tol, 1.0);
        double piece_error = 0.0;
        double piece_l1 = 0.0;
        value += GK::integrate(g, breaks[i], breaks[i + 1], 15, piece_tol, &piece_error, &piece_l1);
        error += piece_error;
        l1 += piece_l1;
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw NumericalFailure("annulus mass is not positive (log-mass shift " + std::to_string(shift) + ")");
    }
    if (error > tol * l1 && error > 1e-15 * l1) {
        throw NumericalFailure("annulus quadrature missed its tolerance at R = " + std::to_string(R));
    }
    return {value, shift};
}

std::string_view to_string(GrowthClass cls)
{
    switch (cls) {
    case GrowthClass::kExponentialGrowth:
        return "ExponentialGrowth";
    case GrowthClass::kLinear:
        return "Linear";
    case GrowthClass::kExponentialDecay:
        return "ExponentialDecay";
    case GrowthClass::kIndeterminate:
        return "Indeterminate";
    }
    return "unknown";
}

OscillationEnvelope oscillation_envelope(Complex c1, Complex c2, double lambda_real)
{
    if (lambda_real == 0.0 || !std::isfinite(lambda_real)) {
        throw InvalidArgument("oscillation envelope needs a nonzero real lambda");
    }
    double a = std::abs(c1);
    double b = std::abs(c2);
    return {(a - b) * (a - b), (a + b) * (a + b), M_PI / std::abs(lambda_real)};
}

double predicted_rate(const ModelEigenfunction& f, double p)
{
    const double base = gamma_p(p) * f.space().rho();
    const double im = f.lambda().im();
    switch (f.kind()) {
    case ModelKind::kBigPhiPlus:
        return p * (base - im);
    case ModelKind::kBigPhiMinus:
        return p * (base + im);
    case ModelKind::kPhi:
        return p * (base + std::abs(im));
    case ModelKind::kMode:
        return *f.branch() == FrameBranch::kPlus ? p * (base - im) : p * (base + im);
    }
    return 0.0;
}

GrowthClass predicted_class(const ModelEigenfunction& f, double p)
{
    if (f.kind() == ModelKind::kPhi && f.lambda().is_real() && p != 2.0) {
        return GrowthClass::kIndeterminate;
    }
    double rate = predicted_rate(f, p);
    if (std::abs(rate) <= kLinearTolerance) {
        return GrowthClass::kLinear;
    }
    return rate > 0 ? GrowthClass::kExponentialGrowth : GrowthClass::kExponentialDecay;
}

namespace {

// log int_R^{2R} e^{s t} dt = log(e^{sR}(e^{sR} - 1)/s).
double log_window_integral(double s, double R)
{
    if (std::abs(s) < 1e-12) {
        return std::log(R);
    }
    double sr = s * R;
    return sr + std::log(std::abs(std::expm1(sr))) - std::log(std::abs(s));
}

struct RateFit {
    double rate;
    double sse;
};

RateFit fit_rate(std::span<const double> R, std::span<const double> log_mass)
{
    auto sse = [&](double s) {
        const std::size_t n = R.size();
        std::vector<double> resid(n);
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            resid[i] = log_mass[i] - log_window_integral(s, R[i]);
            mean += resid[i];
        }
        mean /= double(n);
        double sum = 0.0;
        for (double r : resid) {
            sum += (r - mean) * (r - mean);
        }
        return sum;
    };

    // Coarse scan, then Brent inside the best bracket.
    constexpr double kLo = -60.0;
    constexpr double kHi = 60.0;
    constexpr int kScan = 480;
    const double step = (kHi - kLo) / kScan;
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kScan; ++i) {
        double v = sse(kLo + i * step);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    double a = std::max(kLo, kLo + (best - 1) * step);
    double b = std::min(kHi, kLo + (best + 1) * step);
    auto [s, value] = boost::math::tools::brent_find_minima(sse, a, b, 50);
    return {s, value};
}

} // namespace

GrowthReport classify(const ModelEigenfunction& f, double p, std::span<const double> R_grid,
                      const ClassifyOptions& options)
{
    require_exponent(p);
    if (R_grid.size() < 6) {
        throw InvalidArgument("classify needs at least 6 radii");
    }
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        if (i > 0 && !(R_grid[i] > R_grid[i - 1])) {
            throw InvalidArgument("classify needs increasing radii");
        }
    }
    if (R_grid.front() < 4.0) {
        throw InvalidArgument("classify needs radii >= 4");
    }

    GrowthReport report;
    report.kind = f.kind();
    report.p_exponent = p;
    report.R_grid.assign(R_grid.begin(), R_grid.end());
    std::vector<double> log_mass;
    for (double R : R_grid) {
        report.masses.push_back(annulus_mass(f, p, R, options.tol));
        log_mass.push_back(report.masses.back().log());
    }
    report.fitted_rate = fit_rate(R_grid, log_mass).rate;
    report.predicted_rate = predicted_rate(f, p);
    report.predicted_class = predicted_class(f, p);

    if (f.kind() == ModelKind::kPhi && f.lambda().is_real()) {
        report.envelope = oscillation_envelope(c_function(f.space(), f.lambda()),
                                               c_function(f.space(), f.lambda().negated()), f.lambda().re());
    }

    if (report.predicted_class == GrowthClass::kIndeterminate) {
        report.measured_class = GrowthClass::kIndeterminate;
        return report;
    }
    if (report.fitted_rate > options.dead_band) {
        report.measured_class = GrowthClass::kExponentialGrowth;
        return report;
    }
    if (report.fitted_rate < -options.dead_band) {
        report.measured_class = GrowthClass::kExponentialDecay;
        return report;
    }

    bool any_in_window = std::any_of(R_grid.begin(), R_grid.end(),
                                     [&](double R) { return R >= options.linear_window_start; });
    bool linear = true;
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        double R = R_grid[i];
        if (any_in_window && R < options.linear_window_start) {
            continue;
        }
        LogMass doubled = annulus_mass(f, p, 2.0 * R, options.tol);
        double ratio = std::exp(doubled.log() - log_mass[i]);
        report.linear_ratios.push_back(ratio);
        linear = linear && ratio >= options.linear_ratio_low && ratio <= options.linear_ratio_high;
    }
    report.measured_class = linear ? GrowthClass::kLinear : GrowthClass::kIndeterminate;
    return report;
}

bool lp_spectrum_contains(const RankOneSpace& space, double p, Complex w)
{
    require_finite(w, "spectrum point");
    const double rho = space.rho();
    Complex z = std::sqrt(w - rho * rho);
    // Both roots +-z share |Im z|.
    return std::abs(z.imag()) <= std::abs(gamma_p(p)) * rho + 1e-12;
}

double psi(const RankOneSpace& space, SpectralParam lambda, double t)
{
    if (!(t >= 0.0)) {
        throw InvalidArgument("psi needs t >= 0");
    }
    return std::exp((-std::abs(lambda.im()) - space.rho()) * t);
}

HardyResult hardy_functional(const ModelEigenfunction& f, double p, double eps, std::span<const double> t_grid)
{
    require_exponent(p);
    if (t_grid.empty()) {
        throw InvalidArgument("hardy functional needs a nonempty grid");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw InvalidArgument("hardy grid must be increasing");
        }
    }
    const double decay = std::abs(f.lambda().im()) + f.space().rho();
    const double t_max = t_grid.back();

    HardyResult out;
    double running = 0.0;
    double half = 0.0;
    for (double t : t_grid) {
        double log_value = eps * std::log(t) + f.log_abs(t) + decay * t;
        running = std::max(running, std::exp(log_value));
        out.running_sup.push_back(running);
        if (t <= 0.5 * t_max) {
            half = running;
        }
    }
    out.sup_value = running;
    out.running_sup_half = half;
    out.running_sup_ratio = half > 0 ? running / half : std::numeric_limits<double>::infinity();
    out.threshold = std::max(std::pow(2.0, eps / 2.0), 1.01);
    out.divergence_flag = out.running_sup_ratio >= out.threshold;
    return out;
}

} // namespace rankone
