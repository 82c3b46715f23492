#include "rankone/cli.hpp"

#include "rankone/errors.hpp"
#include "rankone/harish_chandra.hpp"
#include "rankone/radial_ode.hpp"
#include "rankone/rellich.hpp"
#include "rankone/space.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace rankone::cli {

namespace {

using Json = nlohmann::ordered_json;

Json complex_json(Complex z)
{
    return {{"re", z.real()}, {"im", z.imag()}};
}

struct SpaceArgs {
    std::string family;
    std::optional<int> m_gamma;
    std::optional<int> m_2gamma;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--family", family, "real:N, complex:M, quaternionic:M or octonionic");
        cmd->add_option("--mg", m_gamma, "multiplicity m_gamma");
        cmd->add_option("--m2g", m_2gamma, "multiplicity m_2gamma");
    }

    RankOneSpace resolve() const
    {
        if (!family.empty()) {
            if (m_gamma || m_2gamma) {
                throw InvalidArgument("give either --family or --mg/--m2g, not both");
            }
            return RankOneSpace::from_family(family);
        }
        if (!m_gamma) {
            throw InvalidArgument("a space is required: --family or --mg [--m2g]");
        }
        return RankOneSpace::from_multiplicities(*m_gamma, m_2gamma.value_or(0));
    }
};

// Inclusive arithmetic grid start, start + step, ... <= stop.
struct GridArgs {
    double start;
    double stop;
    double step;

    void attach(CLI::App* cmd, const std::string& name)
    {
        cmd->add_option("--" + name + "-start", start, "first grid point")->capture_default_str();
        cmd->add_option("--" + name + "-stop", stop, "last grid point")->capture_default_str();
        cmd->add_option("--" + name + "-step", step, "grid spacing")->capture_default_str();
    }

    std::vector<double> points() const
    {
        if (!(step > 0.0) || !(stop >= start)) {
            throw InvalidArgument("grid needs step > 0 and stop >= start");
        }
        std::vector<double> out;
        for (long k = 0;; ++k) {
            double t = start + double(k) * step;
            if (t > stop + 1e-9 * step) {
                break;
            }
            out.push_back(t);
        }
        return out;
    }

    Json json() const { return {{"start", start}, {"stop", stop}, {"step", step}}; }
};

struct OutputArgs {
    std::string out_path;
    std::string report_path;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--out", out_path, "write CSV here instead of stdout");
        cmd->add_option("--report", report_path, "write the JSON report here instead of stderr");
    }
};

class Csv {
  public:
    explicit Csv(std::initializer_list<std::string_view> header) { row(header); }

    void row(std::initializer_list<std::string_view> fields)
    {
        bool first = true;
        for (auto f : fields) {
            if (!first) {
                text_ += ',';
            }
            text_ += f;
            first = false;
        }
        text_ += '\n';
    }

    const std::string& text() const { return text_; }

  private:
    std::string text_;
};

struct Emitter {
    std::ostream& out;
    std::ostream& err;
    const OutputArgs& args;

    void emit(const Csv& csv, RunManifest manifest, Json report) const
    {
        manifest.output_checksum = fnv1a_hex(csv.text());
        if (args.out_path.empty()) {
            out << csv.text();
        } else {
            std::ofstream file(args.out_path, std::ios::binary);
            if (!file) {
                throw InvalidArgument("cannot open --out file '" + args.out_path + "'");
            }
            file << csv.text();
        }
        Json full = {{"manifest", manifest.to_json()}};
        for (auto& [key, value] : report.items()) {
            full[key] = value;
        }
        if (args.report_path.empty()) {
            err << full.dump(2) << '\n';
        } else {
            std::ofstream file(args.report_path, std::ios::binary);
            if (!file) {
                throw InvalidArgument("cannot open --report file '" + args.report_path + "'");
            }
            file << full.dump(2) << '\n';
        }
    }
};

RunManifest make_manifest(std::string command, const RankOneSpace& space)
{
    RunManifest manifest;
    manifest.command = std::move(command);
    manifest.space = space.descriptor();
    return manifest;
}

std::string fmt(double x)
{
    return format_double(x);
}

double parse_exponent(const std::string& text)
{
    if (text == "inf" || text == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    std::size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse exponent '" + text + "'");
    }
    if (used != text.size()) {
        throw InvalidArgument("cannot parse exponent '" + text + "'");
    }
    return p;
}

struct ModelArgs {
    std::string model = "big_phi_plus";
    std::string lambda;
    int mode_p = 0;
    int mode_q = 0;
    std::string branch = "plus";

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--model", model, "phi, big_phi_plus, big_phi_minus or mode")->capture_default_str();
        cmd->add_option("--lambda", lambda, "spectral parameter, e.g. 0.5+0.3i")->required();
        cmd->add_option("--mode-p", mode_p, "mode index p (model mode)")->capture_default_str();
        cmd->add_option("--mode-q", mode_q, "mode index q (model mode)")->capture_default_str();
        cmd->add_option("--branch", branch, "plus or minus (model mode)")->capture_default_str();
    }

    ModelEigenfunction build(const RankOneSpace& space) const
    {
        SpectralParam lam(parse_complex(lambda));
        if (model == "phi") {
            return ModelEigenfunction::spherical(space, lam);
        }
        if (model == "big_phi_plus") {
            return ModelEigenfunction::big_phi_plus(space, lam);
        }
        if (model == "big_phi_minus") {
            return ModelEigenfunction::big_phi_minus(space, lam);
        }
        if (model == "mode") {
            if (branch != "plus" && branch != "minus") {
                throw InvalidArgument("--branch must be plus or minus");
            }
            return ModelEigenfunction::mode(space, lam, ModeIndex{mode_p, mode_q},
                                            branch == "plus" ? FrameBranch::kPlus : FrameBranch::kMinus);
        }
        throw InvalidArgument("unknown model '" + model + "'");
    }

    Json json() const
    {
        Json j = {{"model", model}, {"lambda", lambda}};
        if (model == "mode") {
            j["mode"] = {mode_p, mode_q};
            j["branch"] = branch;
        }
        return j;
    }
};

int cmd_space(const SpaceArgs& args, std::ostream& out)
{
    RankOneSpace space = args.resolve();
    Json samples = Json::array();
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        samples.push_back({{"t", t}, {"jacobian", jacobian(space, t)}});
    }
    Json body = {
        {"m_gamma", space.m_gamma()},
        {"m_2gamma", space.m_2gamma()},
        {"rho", space.rho()},
        {"n", space.dimension()},
        {"jacobian_samples", samples},
    };
    RunManifest manifest = make_manifest("space", space);
    manifest.output_checksum = fnv1a_hex(body.dump());
    body["manifest"] = manifest.to_json();
    out << body.dump(2) << '\n';
    return kExitOk;
}

struct PhiArgs {
    SpaceArgs space;
    OutputArgs output;
    std::string lambda;
    std::string method = "both";
    double tol = 1e-10;
    GridArgs grid{1.0, 10.0, 0.25};
};

int cmd_phi(const PhiArgs& args, std::ostream& out, std::ostream& err)
{
    RankOneSpace space = args.space.resolve();
    SpectralParam lambda(parse_complex(args.lambda));
    if (args.method != "series" && args.method != "ode" && args.method != "both") {
        throw InvalidArgument("--method must be series, ode or both");
    }
    const bool use_series = args.method != "ode";
    const bool use_ode = args.method != "series";
    auto grid = args.grid.points();

    std::vector<Complex> series(grid.size());
    if (use_series) {
        SphericalPhiSeries phi(space, lambda, args.tol);
        parallel_for(grid.size(), worker_count(), [&](std::size_t i) { series[i] = phi.value(grid[i]); });
    }
    std::optional<RadialSolution> ode;
    if (use_ode) {
        ode = solve_forward(space, lambda, ModeIndex{}, grid);
    }

    Csv csv({"t", "re_series", "im_series", "re_ode", "im_ode", "rel_diff"});
    double max_rel = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::string rs, is, ro, io, rd;
        if (use_series) {
            rs = fmt(series[i].real());
            is = fmt(series[i].imag());
        }
        if (use_ode) {
            ro = fmt(ode->u[i].real());
            io = fmt(ode->u[i].imag());
        }
        if (use_series && use_ode) {
            double denom = std::max(std::abs(series[i]), std::abs(ode->u[i]));
            double rel = denom > 0 ? std::abs(series[i] - ode->u[i]) / denom : 0.0;
            max_rel = std::max(max_rel, rel);
            rd = fmt(rel);
        }
        csv.row({fmt(grid[i]), rs, is, ro, io, rd});
    }

    RunManifest manifest = make_manifest("phi", space);
    manifest.params = {{"lambda", args.lambda}, {"method", args.method}, {"tol", args.tol}, {"t", args.grid.json()}};
    Json report = Json::object();
    if (use_series && use_ode) {
        report["max_rel_diff"] = max_rel;
    }
    if (use_ode) {
        report["ode_residual_sup"] = ode->residual_sup;
        report["ode_valid"] = ode->valid();
    }
    Emitter{out, err, args.output}.emit(csv, manifest, report);
    if (use_ode && !ode->valid()) {
        err << "error: ODE solution failed the residual check\n";
        return kExitNumerical;
    }
    return kExitOk;
}

struct AnnulusArgs {
    SpaceArgs space;
    OutputArgs output;
    ModelArgs model;
    std::string p = "1";
    std::vector<double> radii = {4, 5, 6, 7, 8, 9, 10, 11, 12};
    double tol = 1e-8;
    bool strict = false;
};

int cmd_annulus(const AnnulusArgs& args, std::ostream& out, std::ostream& err)
{
    RankOneSpace space = args.space.resolve();
    ModelEigenfunction f = args.model.build(space);
    double p = parse_exponent(args.p);
    ClassifyOptions options;
    options.tol = args.tol;
    GrowthReport report = classify(f, p, args.radii, options);

    Csv csv({"R", "log_mass"});
    Json masses = Json::array();
    for (std::size_t i = 0; i < report.R_grid.size(); ++i) {
        csv.row({fmt(report.R_grid[i]), fmt(report.masses[i].log())});
        masses.push_back({{"mantissa", report.masses[i].mantissa}, {"exponent", report.masses[i].exponent}});
    }

    RunManifest manifest = make_manifest("annulus", space);
    manifest.params = args.model.json();
    manifest.params["p"] = p;
    manifest.params["R"] = args.radii;
    manifest.params["tol"] = args.tol;
    manifest.params["strict"] = args.strict;

    Json body = {
        {"p_exponent", p},
        {"fitted_rate", report.fitted_rate},
        {"predicted_rate", report.predicted_rate},
        {"predicted_class", std::string(to_string(report.predicted_class))},
        {"measured_class", std::string(to_string(report.measured_class))},
        {"masses", masses},
        {"linear_ratios", report.linear_ratios},
    };
    if (report.envelope) {
        body["envelope"] = {{"min_sq", report.envelope->min_sq},
                            {"max_sq", report.envelope->max_sq},
                            {"period", report.envelope->period}};
    }
    Emitter{out, err, args.output}.emit(csv, manifest, body);
    if (args.strict && report.measured_class == GrowthClass::kIndeterminate) {
        err << "error: classification is Indeterminate (--strict)\n";
        return kExitStrict;
    }
    return kExitOk;
}

struct SpectrumArgs {
    SpaceArgs space;
    OutputArgs output;
    std::string p = "2";
    std::vector<std::string> points;
    std::vector<double> re_range;
    std::vector<double> im_range;
    int n_re = 81;
    int n_im = 41;
};

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out, std::ostream& err)
{
    RankOneSpace space = args.space.resolve();
    double p = parse_exponent(args.p);
    gamma_p(p);

    std::vector<Complex> w;
    for (const auto& s : args.points) {
        w.push_back(parse_complex(s));
    }
    const bool has_grid = !args.re_range.empty() || !args.im_range.empty();
    if (has_grid) {
        if (args.re_range.size() != 2 || args.im_range.size() != 2 || args.n_re < 1 || args.n_im < 1) {
            throw InvalidArgument("grid needs --re-range a,b --im-range a,b and positive --n-re/--n-im");
        }
        for (int j = 0; j < args.n_im; ++j) {
            double im = args.n_im == 1 ? args.im_range[0]
                                       : args.im_range[0] + (args.im_range[1] - args.im_range[0]) * j / (args.n_im - 1.0);
            for (int i = 0; i < args.n_re; ++i) {
                double re = args.n_re == 1
                                ? args.re_range[0]
                                : args.re_range[0] + (args.re_range[1] - args.re_range[0]) * i / (args.n_re - 1.0);
                w.emplace_back(re, im);
            }
        }
    }
    if (w.empty()) {
        throw InvalidArgument("give --w points or a --re-range/--im-range grid");
    }

    std::vector<char> inside(w.size());
    parallel_for(w.size(), worker_count(), [&](std::size_t i) { inside[i] = lp_spectrum_contains(space, p, w[i]); });

    Csv csv({"re_w", "im_w", "inside"});
    std::size_t count = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        csv.row({fmt(w[i].real()), fmt(w[i].imag()), inside[i] ? "1" : "0"});
        count += inside[i] ? 1 : 0;
    }
    RunManifest manifest = make_manifest("spectrum", space);
    manifest.params = {{"p", p}, {"w", args.points}};
    if (has_grid) {
        manifest.params["re_range"] = args.re_range;
        manifest.params["im_range"] = args.im_range;
        manifest.params["n_re"] = args.n_re;
        manifest.params["n_im"] = args.n_im;
    }
    Emitter{out, err, args.output}.emit(csv, manifest,
                                         {{"gamma_p", gamma_p(p)}, {"points", w.size()}, {"inside_count", count}});
    return kExitOk;
}

struct HardyArgs {
    SpaceArgs space;
    OutputArgs output;
    ModelArgs model;
    std::string p = "inf";
    double eps = 0.0;
    GridArgs grid{1.0, 40.0, 0.25};
};

int cmd_hardy(const HardyArgs& args, std::ostream& out, std::ostream& err)
{
    RankOneSpace space = args.space.resolve();
    ModelEigenfunction f = args.model.build(space);
    double p = parse_exponent(args.p);
    auto grid = args.grid.points();
    HardyResult result = hardy_functional(f, p, args.eps, grid);

    Csv csv({"t", "running_sup"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({fmt(grid[i]), fmt(result.running_sup[i])});
    }
    RunManifest manifest = make_manifest("hardy", space);
    manifest.params = args.model.json();
    manifest.params["p"] = args.p;
    manifest.params["eps"] = args.eps;
    manifest.params["t"] = args.grid.json();
    Emitter{out, err, args.output}.emit(csv, manifest,
                                         {{"sup_value", result.sup_value},
                                          {"running_sup_half", result.running_sup_half},
                                          {"running_sup_ratio", result.running_sup_ratio},
                                          {"threshold", result.threshold},
                                          {"divergence_flag", result.divergence_flag}});
    return kExitOk;
}

struct ModeArgs {
    SpaceArgs space;
    OutputArgs output;
    std::string lambda;
    int mode_p = 0;
    int mode_q = 0;
    double t_a = 1.0;
    GridArgs grid{1.0, 10.0, 0.25};
};

int cmd_mode(const ModeArgs& args, std::ostream& out, std::ostream& err)
{
    RankOneSpace space = args.space.resolve();
    SpectralParam lambda(parse_complex(args.lambda));
    ModeIndex mode{args.mode_p, args.mode_q};
    ConnectionProbes probes = default_connection_probes(lambda, args.t_a);

    auto grid = args.grid.points();
    for (double t : {probes.t_a, probes.t_b, probes.t_c}) {
        grid.push_back(t);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
               grid.end());

    RadialSolution u = solve_forward(space, lambda, mode, grid);
    FramePair frames = frame_solutions(space, lambda, mode, grid);
    ConnectionCoefficients cc = connection_coefficients(u, frames, probes);

    Csv csv({"t", "re_u", "im_u", "re_u1", "im_u1", "re_u2", "im_u2"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({fmt(grid[i]), fmt(u.u[i].real()), fmt(u.u[i].imag()), fmt(frames.plus.u[i].real()),
                 fmt(frames.plus.u[i].imag()), fmt(frames.minus.u[i].real()), fmt(frames.minus.u[i].imag())});
    }
    RunManifest manifest = make_manifest("mode", space);
    manifest.params = {{"lambda", args.lambda}, {"mode", {args.mode_p, args.mode_q}}, {"t", args.grid.json()},
                       {"probes", {probes.t_a, probes.t_b, probes.t_c}}};
    Json body = {
        {"c1", complex_json(cc.c1)},
        {"c2", complex_json(cc.c2)},
        {"conditioning", cc.conditioning},
        {"cross_validation_defect", cc.cross_validation_defect},
        {"residual_sup", {{"forward", u.residual_sup}, {"plus", frames.plus.residual_sup},
                          {"minus", frames.minus.residual_sup}}},
    };
    if (mode.is_trivial()) {
        body["c_function"] = {{"plus", complex_json(c_function(space, lambda))},
                              {"minus", complex_json(c_function(space, lambda.negated()))}};
    }
    Emitter{out, err, args.output}.emit(csv, manifest, body);
    if (!u.valid() || !frames.plus.valid() || !frames.minus.valid()) {
        err << "error: a radial solution failed the residual check\n";
        return kExitNumerical;
    }
    return kExitOk;
}

struct CfunArgs {
    SpaceArgs space;
    OutputArgs output;
    std::vector<std::string> lambdas;
    std::string form = "standard";
};

int cmd_cfun(const CfunArgs& args, std::ostream& out, std::ostream& err)
{
    RankOneSpace space = args.space.resolve();
    CFunctionForm form;
    if (args.form == "standard") {
        form = CFunctionForm::kStandard;
    } else if (args.form == "alternate") {
        form = CFunctionForm::kAlternateArrangement;
    } else {
        throw InvalidArgument("--form must be standard or alternate");
    }
    std::vector<Complex> lambdas;
    for (const auto& s : args.lambdas) {
        lambdas.push_back(parse_complex(s));
    }
    const CFunctionCalibration& calibration = c_function_calibration(space, form);
    std::vector<Complex> values(lambdas.size());
    parallel_for(lambdas.size(), worker_count(),
                 [&](std::size_t i) { values[i] = c_function(space, SpectralParam(lambdas[i]), form); });

    Csv csv({"re_lambda", "im_lambda", "re_c", "im_c"});
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        csv.row({fmt(lambdas[i].real()), fmt(lambdas[i].imag()), fmt(values[i].real()), fmt(values[i].imag())});
    }
    RunManifest manifest = make_manifest("cfun", space);
    manifest.params = {{"lambda", args.lambdas}, {"form", args.form}};
    Emitter{out, err, args.output}.emit(csv, manifest,
                                         {{"kappa", complex_json(calibration.kappa)},
                                          {"kappa_analytic", complex_json(calibration.kappa_analytic)},
                                          {"lambda_ref", complex_json(calibration.lambda_ref)},
                                          {"t_ref", calibration.t_ref}});
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spherical functions, radial modes and Rellich-type growth on rank-one symmetric spaces", "rankone"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    SpaceArgs space_args;
    auto* space_cmd = app.add_subcommand("space", "multiplicities, rho, dimension and Jacobian samples (JSON)");
    space_args.attach(space_cmd);

    PhiArgs phi;
    auto* phi_cmd = app.add_subcommand("phi", "spherical function by series and/or ODE (CSV)");
    phi.space.attach(phi_cmd);
    phi.output.attach(phi_cmd);
    phi_cmd->add_option("--lambda", phi.lambda, "spectral parameter, e.g. 1 or 0.5-0.25i")->required();
    phi_cmd->add_option("--method", phi.method, "series, ode or both")->capture_default_str();
    phi_cmd->add_option("--tol", phi.tol, "series tolerance")->capture_default_str();
    phi.grid.attach(phi_cmd, "t");

    AnnulusArgs annulus;
    auto* annulus_cmd = app.add_subcommand("annulus", "annulus L^p masses and growth classification");
    annulus.space.attach(annulus_cmd);
    annulus.output.attach(annulus_cmd);
    annulus.model.attach(annulus_cmd);
    annulus_cmd->add_option("--p", annulus.p, "exponent p >= 1")->capture_default_str();
    annulus_cmd->add_option("--R", annulus.radii, "radii, comma separated")->delimiter(',')->capture_default_str();
    annulus_cmd->add_option("--tol", annulus.tol, "quadrature tolerance")->capture_default_str();
    annulus_cmd->add_flag("--strict", annulus.strict, "exit 4 on an Indeterminate classification");

    SpectrumArgs spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "L^p spectrum membership (CSV)");
    spectrum.space.attach(spectrum_cmd);
    spectrum.output.attach(spectrum_cmd);
    spectrum_cmd->add_option("--p", spectrum.p, "exponent p >= 1 or inf")->capture_default_str();
    spectrum_cmd->add_option("--w", spectrum.points, "points w, e.g. 2 or 1+0.5i (repeatable)");
    spectrum_cmd->add_option("--re-range", spectrum.re_range, "grid real range a,b")->delimiter(',');
    spectrum_cmd->add_option("--im-range", spectrum.im_range, "grid imaginary range a,b")->delimiter(',');
    spectrum_cmd->add_option("--n-re", spectrum.n_re, "grid points along Re")->capture_default_str();
    spectrum_cmd->add_option("--n-im", spectrum.n_im, "grid points along Im")->capture_default_str();

    HardyArgs hardy;
    auto* hardy_cmd = app.add_subcommand("hardy", "Hardy functional and divergence witness");
    hardy.space.attach(hardy_cmd);
    hardy.output.attach(hardy_cmd);
    hardy.model.attach(hardy_cmd);
    hardy_cmd->add_option("--p", hardy.p, "exponent p >= 1 or inf")->capture_default_str();
    hardy_cmd->add_option("--eps", hardy.eps, "weight exponent epsilon >= 0")->capture_default_str();
    hardy.grid.attach(hardy_cmd, "t");

    ModeArgs mode;
    auto* mode_cmd = app.add_subcommand("mode", "forward mode solution, frames and connection coefficients");
    mode.space.attach(mode_cmd);
    mode.output.attach(mode_cmd);
    mode_cmd->add_option("--lambda", mode.lambda, "spectral parameter")->required();
    mode_cmd->add_option("--mode-p", mode.mode_p, "mode index p")->capture_default_str();
    mode_cmd->add_option("--mode-q", mode.mode_q, "mode index q")->capture_default_str();
    mode_cmd->add_option("--t-a", mode.t_a, "first connection probe")->capture_default_str();
    mode.grid.attach(mode_cmd, "t");

    CfunArgs cfun;
    auto* cfun_cmd = app.add_subcommand("cfun", "calibrated c-function values (CSV)");
    cfun.space.attach(cfun_cmd);
    cfun.output.attach(cfun_cmd);
    cfun_cmd->add_option("--lambda", cfun.lambdas, "spectral parameters (repeatable)")->required();
    cfun_cmd->add_option("--form", cfun.form, "standard or alternate")->capture_default_str();

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (space_cmd->parsed()) {
            return cmd_space(space_args, out);
        }
        if (phi_cmd->parsed()) {
            return cmd_phi(phi, out, err);
        }
        if (annulus_cmd->parsed()) {
            return cmd_annulus(annulus, out, err);
        }
        if (spectrum_cmd->parsed()) {
            return cmd_spectrum(spectrum, out, err);
        }
        if (hardy_cmd->parsed()) {
            return cmd_hardy(hardy, out, err);
        }
        if (mode_cmd->parsed()) {
            return cmd_mode(mode, out, err);
        }
        if (cfun_cmd->parsed()) {
            return cmd_cfun(cfun, out, err);
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ExcludedParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitExcluded;
    } catch (const PoleError& e) {
        err << "error: " << e.what() << '\n';
        return kExitExcluded;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitValidation;
}

} // namespace rankone::cli
