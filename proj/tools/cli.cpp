#include "cli.hpp"

#include "format.hpp"

#include "blaine/errors.hpp"
#include "blaine/families.hpp"
#include "blaine/growth.hpp"
#include "blaine/lemmas.hpp"
#include "blaine/ode.hpp"
#include "blaine/qc.hpp"
#include "blaine/tree_io.hpp"
#include "blaine/trees.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <ostream>

namespace blaine::cli {

using nlohmann::json;

const std::vector<CommandInfo>& command_table() {
    static const std::vector<CommandInfo> table{
        {"integrate", {"integrate_along"}},
        {"eval", {"eval_Fm", "eval_Gm", "eval_f2", "eval_F0"}},
        {"asympt-constant", {"asympt_constant"}},
        {"ode solve", {"integrate_equation", "product_E", "ratio_F", "elementary_family"}},
        {"ode jets", {"bank_laine_E_from_F", "coefficient_from_E", "schwarzian", "theorem4_family"}},
        {"zeros", {"find_real_zeros"}},
        {"count", {"count_zeros_argument_principle"}},
        {"order", {"estimate_order"}},
        {"lambda", {"estimate_lambda"}},
        {"indicator", {"estimate_indicator"}},
        {"hA", {"indicator_of_A_from_E"}},
        {"bounded-ratio", {"check_bounded_ratio"}},
        {"asympt-values", {"asymptotic_values_Fm"}},
        {"classify", {"classify_orders"}},
        {"sector-plan", {"sector_plan"}},
        {"tree validate", {"validate_tree"}},
        {"tree check-real", {"check_real_zeros_poles"}},
        {"tree split", {"split_tree"}},
        {"tree count", {"count_singularities"}},
        {"tree classify", {"classify"}},
        {"tree builtin", {"builtin_tree"}},
        {"qc q", {"boundary_stretch_q"}},
        {"qc Q", {"extend_Q"}},
        {"qc phi", {"strip_interpolation_phi"}},
        {"qc T", {"modified_tangent_T"}},
        {"qc tau", {"horizontal_interpolation_tau"}},
        {"qc beltrami", {"beltrami"}},
        {"qc logarea", {"logarea"}},
        {"qc tailbound", {"strip_tail_bound"}},
        {"qc match", {"boundary_match_check"}},
        {"lemma c2", {"c2_lemma_check"}},
        {"lemma koebe", {"koebe_bound_check"}},
    };
    return table;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Globals {
    double tol = kDefaultTol;
    std::string out_path;
    std::string format = "json";
};

// ---------------------------------------------------------------- family flags

struct FamilyArgs {
    std::string family;
    int m = 1;
    std::string a = "0+1i";
    std::string p, r0_num, r0_den = "1", mobius = "1,0,0,1";
    double xi = 0.0, c0 = 0.0;
    double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
};

void add_family_options(CLI::App* sub, FamilyArgs& f, bool required = true) {
    auto* opt = sub->add_option("--family", f.family,
                                "Fm, Gm, f2, F0, Va, Ta, ElementaryE, ElementaryA, SinCos, TanRatio, Theorem4F");
    if (required) opt->required();
    sub->add_option("--m", f.m, "integer parameter m");
    sub->add_option("--a", f.a, "complex parameter a");
    sub->add_option("--p", f.p, "polynomial p, ascending coefficients");
    sub->add_option("--r0-num", f.r0_num, "numerator of R0, ascending coefficients");
    sub->add_option("--r0-den", f.r0_den, "denominator of R0, ascending coefficients");
    sub->add_option("--xi", f.xi, "base point of the F0 integral");
    sub->add_option("--c0", f.c0, "additive constant of the F0 exponent");
    sub->add_option("--mobius", f.mobius, "coefficients m0,m1,m2,m3 of (m0 w + m1)/(m2 w + m3)");
    sub->add_option("--a1", f.a1);
    sub->add_option("--b1", f.b1);
    sub->add_option("--a2", f.a2);
    sub->add_option("--b2", f.b2);
}

FamilyInstance build_family(const FamilyArgs& f) {
    FamilyInstance inst;
    inst.tag = family_from_string(f.family);
    if (inst.tag == FamilyTag::Custom) throw InvalidParameters("custom families are not available from the command line");
    auto& p = inst.params;
    p.m = f.m;
    p.a = parse_complex(f.a);
    if (!f.p.empty()) p.p = parse_list(f.p);
    if (!f.r0_num.empty()) p.r0_num = parse_list(f.r0_num);
    p.r0_den = parse_list(f.r0_den);
    p.xi = f.xi;
    p.c0 = f.c0;
    const auto mob = parse_list(f.mobius);
    if (mob.size() != 4) throw InvalidParameters("--mobius needs four coefficients");
    std::copy(mob.begin(), mob.end(), p.mobius.begin());
    p.a1 = f.a1;
    p.b1 = f.b1;
    p.a2 = f.a2;
    p.b2 = f.b2;
    inst.validate();
    return inst;
}

ComplexFn family_fn(const FamilyInstance& inst, double tol) {
    return [inst, tol](cplx z) { return evaluate(inst, z, tol).value; };
}

// log|f| without overflow for the closed-form exponential family.
LogModulusFn family_logabs(const FamilyInstance& inst, double tol) {
    if (inst.tag == FamilyTag::ElementaryE) {
        auto fam = elementary_family(inst.params.p);
        return [fam](cplx z) { return fam.log_E(z).real(); };
    }
    return log_modulus_of(family_fn(inst, tol));
}

RealJetFn family_real_jet(const FamilyInstance& inst, double tol) {
    auto f = family_fn(inst, tol);
    return [f](double x) {
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        return ValueAndSlope{f(x).real(), (f(x + h).real() - f(x - h).real()) / (2.0 * h)};
    };
}

IndicatorTemplate template_from_string(const std::string& s) {
    if (s == "none") return IndicatorTemplate::none;
    if (s == "cos") return IndicatorTemplate::cos_rho_theta;
    if (s == "sin-abs") return IndicatorTemplate::sin_rho_abs_theta;
    if (s == "sin-pi-abs") return IndicatorTemplate::sin_rho_abs_theta_minus_pi;
    throw InvalidParameters("template must be none, cos, sin-abs or sin-pi-abs");
}

json estimate_json(const GrowthEstimate& g) {
    return {{"estimate", g.rho_hat}, {"residual", g.residual}, {"r_min", g.r_min}, {"r_max", g.r_max}};
}

json classification_json(const ClassificationResult& c) {
    json j{{"case", to_string(c.case_tag)}, {"m", c.m}, {"rho", c.rho}, {"indicator", to_string(c.indicator)}};
    j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
    return j;
}

Output indicator_output(const IndicatorSample& s) {
    Output o;
    o.doc = {{"rho", s.rho},
             {"c", s.c},
             {"template", to_string(s.tmpl)},
             {"template_residual", s.template_residual},
             {"spread", s.spread},
             {"low_confidence", s.low_confidence},
             {"theta", s.theta},
             {"h", s.h}};
    Table t{{"theta", "h"}, {}};
    for (std::size_t i = 0; i < s.theta.size(); ++i) t.rows.push_back({s.theta[i], s.h[i]});
    o.table = t;
    return o;
}

json tree_report_json(const ValidationReport& r) {
    json issues = json::array();
    for (const auto& i : r.issues) issues.push_back({{"clause", i.clause}, {"detail", i.detail}});
    return {{"status", r.valid() ? "valid" : "invalid"}, {"valid", r.valid()}, {"issues", issues}};
}

// Thrown when a command ran but its verdict is a validation failure; the
// output is still written.
struct ReportedFailure {
    Output output;
    std::string message;
};

struct Command {
    CLI::App* app;
    std::function<Output()> handler;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bank-Laine function toolkit", "blaine"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol", g.tol, "tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out_path, "write the result to this file (atomically)");
    app.add_option("--format", g.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

    std::vector<Command> commands;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        return sub;
    };

    // ------------------------------------------------------------ quadrature and families
    FamilyArgs fam_eval;
    std::string z_eval;
    {
        auto* sub = leaf(&app, "eval", "evaluate a function family at a point");
        add_family_options(sub, fam_eval);
        sub->add_option("--z", z_eval, "point a+bi")->required();
        commands.push_back({sub, [&] {
                                const auto inst = build_family(fam_eval);
                                const cplx z = parse_complex(z_eval);
                                const auto ev = evaluate(inst, z, g.tol);
                                Output o;
                                o.doc = {{"family", to_string(inst.tag)},
                                         {"z", complex_json(z)},
                                         {"value", complex_json(ev.value)},
                                         {"err", ev.err}};
                                return o;
                            }});
    }

    FamilyArgs fam_int;
    std::string int_path, int_start;
    double int_angle = 0.0, int_rtrunc = 0.0;
    {
        auto* sub = leaf(&app, "integrate", "integrate a family along a polyline or ray");
        add_family_options(sub, fam_int);
        sub->add_option("--path", int_path, "polyline anchors a+bi,c+di,...");
        sub->add_option("--ray-start", int_start, "ray start a+bi");
        sub->add_option("--angle", int_angle, "ray direction in radians");
        sub->add_option("--rtrunc", int_rtrunc, "ray truncation radius");
        commands.push_back({sub, [&] {
                                const auto inst = build_family(fam_int);
                                PathSpec path;
                                if (!int_path.empty()) path = PathSpec::polyline(parse_complex_list(int_path));
                                else if (!int_start.empty())
                                    path = PathSpec::ray(parse_complex(int_start), int_angle, int_rtrunc);
                                else throw InvalidParameters("give --path or --ray-start");
                                const auto r = integrate_along(path, family_fn(inst, g.tol), g.tol);
                                Output o;
                                o.doc = {{"value", complex_json(r.value)},
                                         {"err_estimate", r.err_estimate},
                                         {"evaluations", r.evaluations},
                                         {"extent", r.extent}};
                                return o;
                            }});
    }

    int ac_m = 2;
    {
        auto* sub = leaf(&app, "asympt-constant", "limit of G_{2(m-1)} along the positive axis");
        sub->add_option("--m", ac_m)->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = {{"m", ac_m}, {"value", asympt_constant(ac_m, g.tol)}};
                                return o;
                            }});
    }

    // ------------------------------------------------------------ ode
    auto* ode = app.add_subcommand("ode", "solution pairs and jet identities");
    ode->require_subcommand(1);
    ode->fallthrough();
    std::string ode_kind = "constant", ode_coeffs = "1", ode_path = "0,1";
    int ode_samples = 11;
    {
        auto* sub = leaf(ode, "solve", "integrate w'' + A w = 0 with a normalized pair");
        sub->add_option("--A", ode_kind, "constant, polynomial or elementary")
            ->check(CLI::IsMember({"constant", "polynomial", "elementary"}));
        sub->add_option("--coeffs", ode_coeffs, "constant value, polynomial or p coefficients (ascending)");
        sub->add_option("--path", ode_path, "polyline anchors a+bi,c+di,...");
        sub->add_option("--samples", ode_samples, "number of output points")->check(CLI::Range(2, 100000));
        commands.push_back({sub, [&] {
                                const auto coeffs = parse_list(ode_coeffs);
                                CoefficientModel A;
                                InitialData init;
                                if (ode_kind == "constant") {
                                    if (coeffs.size() != 1) throw InvalidParameters("constant A takes one value");
                                    A = CoefficientModel::constant(coeffs[0]);
                                } else if (ode_kind == "polynomial") {
                                    A = CoefficientModel::polynomial(coeffs);
                                }
                                const auto path = PathSpec::polyline(parse_complex_list(ode_path));
                                if (ode_kind == "elementary") {
                                    const auto fam = elementary_family(coeffs);
                                    A = fam.A;
                                    init = fam.initial_data(path.anchors.front(), g.tol);
                                }
                                const auto pair = integrate_equation(A, path, init, g.tol);
                                const auto E = product_E(pair);
                                Output o;
                                Table t{{"s", "z", "w1", "w2", "E", "dE", "F", "wronskian"}, {}};
                                json rows = json::array();
                                const double L = path.length();
                                for (int k = 0; k < ode_samples; ++k) {
                                    const double s = L * k / (ode_samples - 1);
                                    const auto st = pair.at(s);
                                    const auto ej = E.jets(st);
                                    json F = nullptr;
                                    try {
                                        F = complex_json(ratio_F(pair, st).value);
                                    } catch (const PoleAt&) {
                                    }
                                    json row{{"s", s},
                                             {"z", complex_json(st.z)},
                                             {"w1", complex_json(st.w1)},
                                             {"w2", complex_json(st.w2)},
                                             {"E", complex_json(ej.value)},
                                             {"dE", complex_json(ej.d1)},
                                             {"F", F},
                                             {"wronskian", complex_json(st.wronskian())}};
                                    t.rows.push_back({row["s"], row["z"], row["w1"], row["w2"], row["E"], row["dE"],
                                                      row["F"], row["wronskian"]});
                                    rows.push_back(row);
                                }
                                o.doc = {{"max_wronskian_drift", pair.max_wronskian_drift()},
                                         {"steps", pair.samples.size()},
                                         {"samples", rows}};
                                o.table = t;
                                return o;
                            }});
    }

    std::string jet_source = "tan", jet_z;
    FamilyArgs fam_jet;
    {
        auto* sub = leaf(ode, "jets", "E from F, A from E and Schwarzians of closed-form sources");
        sub->add_option("--source", jet_source, "tan, theorem4, elementary or sincos")
            ->check(CLI::IsMember({"tan", "theorem4", "elementary", "sincos"}));
        sub->add_option("--z", jet_z, "point a+bi")->required();
        sub->add_option("--p", fam_jet.p, "p coefficients for the elementary source");
        sub->add_option("--mobius", fam_jet.mobius, "Mobius coefficients for theorem4");
        sub->add_option("--a1", fam_jet.a1);
        sub->add_option("--b1", fam_jet.b1);
        sub->add_option("--a2", fam_jet.a2);
        sub->add_option("--b2", fam_jet.b2);
        commands.push_back({sub, [&] {
                                const cplx z = parse_complex(jet_z);
                                Output o;
                                o.doc["source"] = jet_source;
                                o.doc["z"] = complex_json(z);
                                if (jet_source == "tan" || jet_source == "theorem4") {
                                    JetSample F;
                                    if (jet_source == "tan") {
                                        F = tan_taylor(z).jet(z);
                                    } else {
                                        const auto mob = parse_list(fam_jet.mobius);
                                        if (mob.size() != 4) throw InvalidParameters("--mobius needs four coefficients");
                                        const auto fam = theorem4_family({mob[0], mob[1], mob[2], mob[3]}, fam_jet.a1,
                                                                         fam_jet.b1, fam_jet.a2, fam_jet.b2);
                                        F = fam.jets(z);
                                        o.doc["schwarzian_constant"] = fam.schwarzian_constant();
                                    }
                                    const cplx S = schwarzian(F);
                                    o.doc["F"] = complex_json(F.value);
                                    o.doc["schwarzian"] = complex_json(S);
                                    o.doc["A"] = complex_json(S / 2.0);
                                    o.doc["E"] = complex_json(bank_laine_E_from_F(F));
                                } else {
                                    JetSample E;
                                    if (jet_source == "elementary") {
                                        if (fam_jet.p.empty()) throw InvalidParameters("--p is required");
                                        E = elementary_family(parse_list(fam_jet.p)).E_taylor(z).jet(z);
                                    } else {
                                        E = sincos_taylor(z).jet(z);
                                    }
                                    o.doc["E"] = complex_json(E.value);
                                    o.doc["A"] = complex_json(coefficient_from_E(E));
                                }
                                return o;
                            }});
    }

    // ------------------------------------------------------------ growth
    FamilyArgs fam_zeros;
    double z_lo = 0.0, z_hi = 10.0, z_sep = kDefaultSepFloor;
    {
        auto* sub = leaf(&app, "zeros", "real zeros of a family on an interval");
        add_family_options(sub, fam_zeros);
        sub->add_option("--lo", z_lo)->required();
        sub->add_option("--hi", z_hi)->required();
        sub->add_option("--sep", z_sep, "separation floor")->check(CLI::PositiveNumber);
        commands.push_back({sub, [&] {
                                const auto inst = build_family(fam_zeros);
                                const auto zl = find_real_zeros(family_real_jet(inst, g.tol), z_lo, z_hi, z_sep);
                                Output o;
                                Table t{{"x", "slope", "residual"}, {}};
                                for (std::size_t i = 0; i < zl.zeros.size(); ++i)
                                    t.rows.push_back({zl.zeros[i], zl.slopes[i], zl.residuals[i]});
                                o.doc = {{"count", zl.zeros.size()},
                                         {"zeros", zl.zeros},
                                         {"slopes", zl.slopes},
                                         {"residuals", zl.residuals}};
                                o.table = t;
                                return o;
                            }});
    }

    FamilyArgs fam_count;
    std::string corner0, corner1;
    {
        auto* sub = leaf(&app, "count", "zeros inside a rectangle by the argument principle");
        add_family_options(sub, fam_count);
        sub->add_option("--corner0", corner0, "lower-left corner a+bi")->required();
        sub->add_option("--corner1", corner1, "upper-right corner a+bi")->required();
        commands.push_back({sub, [&] {
                                const auto inst = build_family(fam_count);
                                const int n = count_zeros_argument_principle(family_fn(inst, g.tol),
                                                                             parse_complex(corner0),
                                                                             parse_complex(corner1), g.tol);
                                Output o;
                                o.doc = {{"zeros", n}};
                                return o;
                            }});
    }

    FamilyArgs fam_order;
    double o_rmin = 2.0, o_rmax = 30.0;
    int o_rungs = 12;
    {
        auto* sub = leaf(&app, "order", "order of growth from maximum modulus");
        add_family_options(sub, fam_order);
        sub->add_option("--rmin", o_rmin)->check(CLI::PositiveNumber);
        sub->add_option("--rmax", o_rmax)->check(CLI::PositiveNumber);
        sub->add_option("--rungs", o_rungs)->check(CLI::Range(8, 10000));
        commands.push_back({sub, [&] {
                                const auto inst = build_family(fam_order);
                                const auto est = estimate_order(family_logabs(inst, g.tol),
                                                                geometric_ladder(o_rmin, o_rmax, o_rungs));
                                Output o;
                                o.doc = estimate_json(est);
                                return o;
                            }});
    }

    FamilyArgs fam_lambda;
    std::string lambda_zeros;
    double l_hi = 100.0, l_sep = kDefaultSepFloor;
    {
        auto* sub = leaf(&app, "lambda", "exponent of convergence of real zeros");
        add_family_options(sub, fam_lambda, false);
        sub->add_option("--zeros", lambda_zeros, "explicit zero list instead of a family");
        sub->add_option("--hi", l_hi, "zeros are located in [-hi, hi]")->check(CLI::PositiveNumber);
        sub->add_option("--sep", l_sep, "separation floor")->check(CLI::PositiveNumber);
        commands.push_back({sub, [&] {
                                std::vector<double> zeros;
                                if (!lambda_zeros.empty()) {
                                    zeros = parse_list(lambda_zeros);
                                } else {
                                    if (fam_lambda.family.empty()) throw InvalidParameters("give --family or --zeros");
                                    const auto inst = build_family(fam_lambda);
                                    zeros = find_real_zeros(family_real_jet(inst, g.tol), -l_hi, l_hi, l_sep).zeros;
                                }
                                Output o;
                                o.doc = estimate_json(estimate_lambda(zeros));
                                o.doc["zeros_used"] = zeros.size();
                                return o;
                            }});
    }

    struct IndicatorArgs {
        FamilyArgs fam;
        double rho = 1.0, rmin = 10.0, rmax = 50.0;
        int rungs = 6, n_theta = 73;
        std::string tmpl = "none";
    };
    auto add_indicator = [&](CLI::App* sub, IndicatorArgs& ia) {
        add_family_options(sub, ia.fam);
        sub->add_option("--rho", ia.rho, "order used for normalization")->check(CLI::PositiveNumber);
        sub->add_option("--rmin", ia.rmin)->check(CLI::PositiveNumber);
        sub->add_option("--rmax", ia.rmax)->check(CLI::PositiveNumber);
        sub->add_option("--rungs", ia.rungs)->check(CLI::Range(3, 1000));
        sub->add_option("--n-theta", ia.n_theta)->check(CLI::Range(3, 100000));
        sub->add_option("--template", ia.tmpl, "none, cos, sin-abs or sin-pi-abs");
    };
    auto indicator_of = [&](const IndicatorArgs& ia) {
        const auto inst = build_family(ia.fam);
        return estimate_indicator(family_logabs(inst, g.tol), ia.rho, uniform_theta_grid(ia.n_theta),
                                  geometric_ladder(ia.rmin, ia.rmax, ia.rungs), template_from_string(ia.tmpl));
    };
    IndicatorArgs ind_args, ha_args;
    {
        auto* sub = leaf(&app, "indicator", "indicator function of a family");
        add_indicator(sub, ind_args);
        commands.push_back({sub, [&] { return indicator_output(indicator_of(ind_args)); }});
    }
    {
        auto* sub = leaf(&app, "hA", "indicator of A = 2 max(-h_E, 0) from a Bank-Laine family E");
        add_indicator(sub, ha_args);
        commands.push_back({sub, [&] { return indicator_output(indicator_of_A_from_E(indicator_of(ha_args))); }});
    }

    FamilyArgs fam_ratio;
    int br_dir = 1, br_rungs = 12;
    double br_xmin = 1.0, br_xmax = 100.0;
    {
        auto* sub = leaf(&app, "bounded-ratio", "diagnostic for |E(x)/x| along a real ray");
        add_family_options(sub, fam_ratio);
        sub->add_option("--direction", br_dir, "+1 or -1")->check(CLI::IsMember({1, -1}));
        sub->add_option("--xmin", br_xmin)->check(CLI::PositiveNumber);
        sub->add_option("--xmax", br_xmax)->check(CLI::PositiveNumber);
        sub->add_option("--rungs", br_rungs)->check(CLI::Range(2, 10000));
        commands.push_back({sub, [&] {
                                const auto inst = build_family(fam_ratio);
                                const auto r = check_bounded_ratio(family_fn(inst, g.tol), br_dir,
                                                                   geometric_ladder(br_xmin, br_xmax, br_rungs));
                                Output o;
                                o.doc = {{"max_ratio", r.max_ratio},
                                         {"tail_ratio", r.tail_ratio},
                                         {"unbounded", r.unbounded},
                                         {"x", r.x},
                                         {"ratio", r.ratio}};
                                Table t{{"x", "ratio"}, {}};
                                for (std::size_t i = 0; i < r.x.size(); ++i) t.rows.push_back({r.x[i], r.ratio[i]});
                                o.table = t;
                                return o;
                            }});
    }

    int av_m = 1;
    {
        auto* sub = leaf(&app, "asympt-values", "asymptotic values of F_m");
        sub->add_option("--m", av_m)->required()->check(CLI::PositiveNumber);
        commands.push_back({sub, [&] {
                                const auto vals = asymptotic_values_Fm(av_m, g.tol);
                                Output o;
                                json arr = json::array();
                                Table t{{"k", "value"}, {}};
                                for (std::size_t k = 0; k < vals.size(); ++k) {
                                    arr.push_back(complex_json(vals[k]));
                                    t.rows.push_back({k, complex_json(vals[k])});
                                }
                                o.doc = {{"m", av_m}, {"values", arr}};
                                o.table = t;
                                return o;
                            }});
    }

    std::string cls_case;
    int cls_m = 0;
    {
        auto* sub = leaf(&app, "classify", "order, exponent and indicator shape for a case and m");
        sub->add_option("--case", cls_case, "i, ii or iii")->required();
        sub->add_option("--m", cls_m)->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = classification_json(classify_orders(case_from_string(cls_case), cls_m));
                                return o;
                            }});
    }

    std::string sp_case;
    int sp_m = 0;
    {
        auto* sub = leaf(&app, "sector-plan", "sector openings and rotation constants");
        sub->add_option("--case", sp_case, "i, ii or iii")->required();
        sub->add_option("--m", sp_m)->required();
        commands.push_back({sub, [&] {
                                const auto plan = sector_plan(case_from_string(sp_case), sp_m);
                                Output o;
                                json arr = json::array();
                                Table t{{"j", "opening", "bisector", "rotation", "kind"}, {}};
                                for (std::size_t j = 0; j < plan.sectors.size(); ++j) {
                                    const auto& s = plan.sectors[j];
                                    const char* kind = s.kind == Sector::Kind::large ? "large" : "small";
                                    arr.push_back({{"opening", s.opening},
                                                   {"bisector", s.bisector},
                                                   {"rotation", complex_json(s.rotation)},
                                                   {"kind", kind}});
                                    t.rows.push_back({j, s.opening, s.bisector, complex_json(s.rotation), kind});
                                }
                                o.doc = {{"case", to_string(plan.case_tag)}, {"m", plan.m}, {"rho", plan.rho},
                                         {"sectors", arr}};
                                o.table = t;
                                return o;
                            }});
    }

    // ------------------------------------------------------------ trees
    auto* tree = app.add_subcommand("tree", "labeled plane trees");
    tree->require_subcommand(1);
    tree->fallthrough();
    std::string tv_in, tr_in, ts_in, tc_in, tk_in;
    int ts_vertex = -1, tb_m = 4;
    {
        auto* sub = leaf(tree, "validate", "check tree invariants");
        sub->add_option("--in", tv_in, "tree JSON file")->required();
        commands.push_back({sub, [&] {
                                const auto t = read_tree_file(tv_in);
                                const auto rep = validate_tree(t);
                                Output o;
                                o.doc = tree_report_json(rep);
                                if (!rep.valid())
                                    throw ReportedFailure{o, "tree invalid (" + rep.issues.front().clause +
                                                                 "): " + rep.issues.front().detail};
                                return o;
                            }});
    }
    {
        auto* sub = leaf(tree, "check-real", "whether every non-real vertex meets faces over 0 and inf");
        sub->add_option("--in", tr_in, "tree JSON file")->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = {{"real_zeros_poles", check_real_zeros_poles(read_tree_file(tr_in))}};
                                return o;
                            }});
    }
    {
        auto* sub = leaf(tree, "split", "split at a vertex adjacent only to faces 0 and inf");
        sub->add_option("--in", ts_in, "tree JSON file")->required();
        sub->add_option("--vertex", ts_vertex, "vertex id (default: smallest eligible)");
        commands.push_back({sub, [&] {
                                const auto t = read_tree_file(ts_in);
                                int v = ts_vertex;
                                if (v < 0) {
                                    const auto el = eligible_split_vertices(t);
                                    if (el.empty()) throw IneligibleVertex("no eligible vertex");
                                    v = el.front();
                                }
                                Output o;
                                o.doc = tree_to_json(split_tree(t, v));
                                return o;
                            }});
    }
    {
        auto* sub = leaf(tree, "count", "number of faces labeled in C*");
        sub->add_option("--in", tk_in, "tree JSON file")->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = {{"m", count_singularities(read_tree_file(tk_in))}};
                                return o;
                            }});
    }
    {
        auto* sub = leaf(tree, "classify", "case, order and exponent of a symmetric tree");
        sub->add_option("--in", tc_in, "tree JSON file")->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = classification_json(classify(read_tree_file(tc_in)));
                                return o;
                            }});
    }
    {
        auto* sub = leaf(tree, "builtin", "the built-in case iii tree for even m >= 4");
        sub->add_option("--m", tb_m)->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = tree_to_json(builtin_tree(tb_m));
                                return o;
                            }});
    }

    // ------------------------------------------------------------ qc
    auto* qc = app.add_subcommand("qc", "quasiconformal interpolation and logarithmic area");
    qc->require_subcommand(1);
    qc->fallthrough();
    std::string qa = "0+1i", qz;
    double qy = 1.0;
    {
        auto* sub = leaf(qc, "q", "boundary stretch q_a(y)");
        sub->add_option("--a", qa)->required();
        sub->add_option("--y", qy)->required();
        commands.push_back({sub, [&] {
                                const cplx a = parse_complex(qa);
                                Output o;
                                o.doc = {{"y_a", stretch_threshold(a)}, {"value", boundary_stretch_q(a, qy)}};
                                return o;
                            }});
    }
    {
        auto* sub = leaf(qc, "Q", "odd monotone extension Q_a(y)");
        sub->add_option("--a", qa)->required();
        sub->add_option("--y", qy)->required();
        commands.push_back({sub, [&] {
                                const StretchExtension Q(parse_complex(qa));
                                Output o;
                                o.doc = {{"y_a", Q.y_a}, {"Y", Q.Y}, {"value", Q(qy)}, {"derivative", Q.derivative(qy)}};
                                return o;
                            }});
    }
    {
        auto* sub = leaf(qc, "phi", "strip interpolation phi_a(z)");
        sub->add_option("--a", qa)->required();
        sub->add_option("--z", qz)->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = {{"value", complex_json(strip_interpolation_phi(parse_complex(qa),
                                                                                        parse_complex(qz)))}};
                                return o;
                            }});
    }
    {
        auto* sub = leaf(qc, "T", "modified tangent T_a(z) = v_a(phi_a(z))");
        sub->add_option("--a", qa)->required();
        sub->add_option("--z", qz)->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = {{"value",
                                          complex_json(modified_tangent_T(parse_complex(qa), parse_complex(qz)))}};
                                return o;
                            }});
    }

    struct HArgs {
        double shift = 0.0;
        std::string hx, hy;
    };
    auto add_h = [](CLI::App* sub, HArgs& h) {
        sub->add_option("--shift", h.shift, "h(x) = x + shift");
        sub->add_option("--h-x", h.hx, "sample abscissae of h");
        sub->add_option("--h-y", h.hy, "sample values of h");
    };
    auto build_h = [](const HArgs& h) {
        if (!h.hx.empty() || !h.hy.empty()) return BoundaryMap::from_samples(parse_list(h.hx), parse_list(h.hy));
        return BoundaryMap::translation(h.shift);
    };
    HArgs tau_h;
    {
        auto* sub = leaf(qc, "tau", "horizontal interpolation tau(z)");
        add_h(sub, tau_h);
        sub->add_option("--z", qz)->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = {{"value",
                                          complex_json(horizontal_interpolation_tau(build_h(tau_h), parse_complex(qz)))}};
                                return o;
                            }});
    }

    struct BeltramiArgs {
        std::string map = "tau", a = "0+1i", z;
        HArgs h;
        double x0 = 0.05, x1 = 0.95, y0 = 0.05, y1 = 0.95, step = kDefaultFdStep;
        int nx = 10, ny = 10;
    } ba;
    {
        auto* sub = leaf(qc, "beltrami", "finite-difference Beltrami coefficient at a point or on a grid");
        sub->add_option("--map", ba.map, "tau, phi, T or exp")->check(CLI::IsMember({"tau", "phi", "T", "exp"}));
        sub->add_option("--a", ba.a, "parameter a for phi and T");
        add_h(sub, ba.h);
        sub->add_option("--z", ba.z, "single point a+bi (otherwise a grid)");
        sub->add_option("--x0", ba.x0);
        sub->add_option("--x1", ba.x1);
        sub->add_option("--y0", ba.y0);
        sub->add_option("--y1", ba.y1);
        sub->add_option("--nx", ba.nx)->check(CLI::Range(1, 10000));
        sub->add_option("--ny", ba.ny)->check(CLI::Range(1, 10000));
        sub->add_option("--fd-step", ba.step)->check(CLI::PositiveNumber);
        commands.push_back({sub, [&] {
                                std::function<cplx(cplx)> f;
                                std::function<cplx(cplx)> closed;
                                if (ba.map == "tau") {
                                    const auto h = build_h(ba.h);
                                    f = [h](cplx z) { return horizontal_interpolation_tau(h, z); };
                                    closed = [h](cplx z) { return mu_tau_closed_form(h, z); };
                                } else if (ba.map == "phi") {
                                    const StretchExtension Q(parse_complex(ba.a));
                                    f = [Q](cplx z) { return strip_interpolation_phi(Q, z); };
                                    closed = [Q](cplx z) { return mu_phi_closed_form(Q, z); };
                                } else if (ba.map == "T") {
                                    const StretchExtension Q(parse_complex(ba.a));
                                    f = [Q](cplx z) { return modified_tangent_T(Q, z); };
                                    closed = [Q](cplx z) { return mu_phi_closed_form(Q, z); };
                                } else {
                                    f = [](cplx z) { return std::exp(z); };
                                    closed = [](cplx) { return cplx{0.0, 0.0}; };
                                }
                                std::vector<cplx> pts;
                                if (!ba.z.empty()) {
                                    pts.push_back(parse_complex(ba.z));
                                } else {
                                    for (int i = 0; i < ba.nx; ++i)
                                        for (int j = 0; j < ba.ny; ++j) {
                                            const double x = ba.nx == 1 ? ba.x0 : ba.x0 + (ba.x1 - ba.x0) * i / (ba.nx - 1);
                                            const double y = ba.ny == 1 ? ba.y0 : ba.y0 + (ba.y1 - ba.y0) * j / (ba.ny - 1);
                                            pts.push_back({x, y});
                                        }
                                }
                                Output o;
                                Table t{{"x", "y", "re_mu", "im_mu", "K"}, {}};
                                json arr = json::array();
                                double worst = 0.0;
                                for (cplx z : pts) {
                                    const auto b = beltrami(f, z, ba.step);
                                    worst = std::max(worst, std::abs(b.mu - closed(z)));
                                    t.rows.push_back({z.real(), z.imag(), b.mu.real(), b.mu.imag(), b.K});
                                    arr.push_back({{"z", complex_json(z)}, {"mu", complex_json(b.mu)}, {"K", b.K}});
                                }
                                o.doc = {{"map", ba.map}, {"max_closed_form_mismatch", worst}, {"samples", arr}};
                                o.table = t;
                                return o;
                            }});
    }

    struct LogareaArgs {
        std::string region = "sector";
        double r1 = 1.0, r2 = std::numbers::e, th1 = 0.0, th2 = kPi / 4, K = 1.0, alpha = 1.0;
        double trunc = kNoTruncation;
        int k = 1;
    } la;
    {
        auto* sub = leaf(qc, "logarea", "logarithmic area of a region");
        sub->add_option("--region", la.region, "sector, half-strip, pinched or level-set")
            ->check(CLI::IsMember({"sector", "half-strip", "pinched", "level-set"}));
        sub->add_option("--r1", la.r1);
        sub->add_option("--r2", la.r2);
        sub->add_option("--theta1", la.th1);
        sub->add_option("--theta2", la.th2);
        sub->add_option("--alpha", la.alpha, "map the sector by z^alpha first");
        sub->add_option("--k", la.k);
        sub->add_option("--K", la.K);
        sub->add_option("--trunc", la.trunc, "truncation radius (|z| for sectors, Re z for strips)");
        commands.push_back({sub, [&] {
                                RegionSpec r;
                                if (la.region == "sector")
                                    r = RegionSpec::annular_sector(la.r1, la.r2, la.th1, la.th2).power(la.alpha);
                                else if (la.region == "half-strip") r = RegionSpec::half_strip(la.k);
                                else if (la.region == "pinched") r = RegionSpec::pinched_strip(la.k, la.K);
                                else r = RegionSpec::exp_level_set(la.K);
                                Output o;
                                o.doc = {{"region", la.region}, {"logarea", logarea(r, la.trunc, std::min(g.tol, 1e-9))}};
                                if (la.region == "level-set") o.doc["budget"] = exp_level_set_budget(la.K);
                                return o;
                            }});
    }

    int tb_k = 1;
    {
        auto* sub = leaf(qc, "tailbound", "closed-form logarea bound for a pinched strip");
        sub->add_option("--k", tb_k)->required();
        commands.push_back({sub, [&] {
                                Output o;
                                o.doc = {{"k", tb_k}, {"bound", strip_tail_bound(tb_k)}};
                                return o;
                            }});
    }

    struct MatchArgs {
        std::string a = "0+1i", d_a;
        double theta = -kPi / 2, t_lo = 1.0, t_hi = 20.0, t0 = 1.0;
        int samples = 400;
    } ma;
    {
        auto* sub = leaf(qc, "match", "boundary identity for T_a against an oriented asymptotic value");
        sub->add_option("--a", ma.a)->required();
        sub->add_option("--d-a", ma.d_a, "asymptotic value of d (default a)");
        sub->add_option("--theta", ma.theta, "direction of d: 0, pi/2, -pi/2 or pi (radians)");
        sub->add_option("--t-lo", ma.t_lo);
        sub->add_option("--t-hi", ma.t_hi);
        sub->add_option("--t0", ma.t0);
        sub->add_option("--samples", ma.samples)->check(CLI::Range(2, 1000000));
        commands.push_back({sub, [&] {
                                const cplx a = parse_complex(ma.a);
                                const OrientedAsymptoticValue d{ma.d_a.empty() ? a : parse_complex(ma.d_a), ma.theta};
                                const auto r = boundary_match_check(a, d, ma.t_lo, ma.t_hi, ma.samples, ma.t0);
                                Output o;
                                o.doc = {{"clause", r.clause == 1 ? "i" : "ii"},
                                         {"t1", r.t1},
                                         {"max_mismatch", r.max_mismatch},
                                         {"samples", r.samples}};
                                return o;
                            }});
    }

    // ------------------------------------------------------------ lemmas
    auto* lemma = app.add_subcommand("lemma", "numerical lemma checks");
    lemma->require_subcommand(1);
    lemma->fallthrough();
    struct C2Args {
        std::string shape = "sine";
        double a = 0.0, b = 1.0, amplitude = 1.0, harmonic = 0.0;
        int n = 2001;
    } c2;
    {
        auto* sub = leaf(lemma, "c2", "lower bound for C^2 functions with one critical point");
        sub->add_option("--shape", c2.shape, "sine, parabola, harmonic or double-bump");
        sub->add_option("--a", c2.a);
        sub->add_option("--b", c2.b);
        sub->add_option("--amplitude", c2.amplitude);
        sub->add_option("--harmonic", c2.harmonic, "third-harmonic weight for the harmonic shape");
        sub->add_option("--n", c2.n, "number of samples")->check(CLI::Range(5, 10000000));
        commands.push_back({sub, [&] {
                                const auto s = sample_c2(c2_shape(c2.shape, c2.a, c2.b, c2.amplitude, c2.harmonic),
                                                         c2.a, c2.b, c2.n);
                                Output o;
                                o.doc = {{"holds", c2_lemma_check(s)}, {"samples", c2.n}};
                                return o;
                            }});
    }
    std::string kb_map = "id", kb_z0, kb_z;
    {
        auto* sub = leaf(lemma, "koebe", "distortion bound for univalent maps of the right half-plane");
        sub->add_option("--map", kb_map, "id, square or log1p");
        sub->add_option("--z0", kb_z0)->required();
        sub->add_option("--z", kb_z)->required();
        commands.push_back({sub, [&] {
                                const auto r = koebe_report(koebe_map_derivative(kb_map), parse_complex(kb_z0),
                                                            parse_complex(kb_z));
                                Output o;
                                o.doc = {{"holds", r.holds}, {"lhs", r.lhs}, {"rhs", r.rhs}};
                                return o;
                            }});
    }

    // ------------------------------------------------------------ dispatch
    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    const Command* chosen = nullptr;
    for (const auto& c : commands)
        if (c.app->parsed()) chosen = &c;
    if (!chosen) {
        err << "usage error: incomplete command\n" << app.help();
        return kUsage;
    }

    const Format fmt = g.format == "csv" ? Format::csv : g.format == "text" ? Format::text : Format::json;
    auto emit = [&](const Output& o) {
        const std::string text = render(o, fmt);
        if (g.out_path.empty()) out << text;
        else write_atomic(g.out_path, text);
    };
    try {
        emit(chosen->handler());
        return kOk;
    } catch (const ReportedFailure& f) {
        try {
            emit(f.output);
        } catch (const std::exception& e) {
            err << e.what() << "\n";
        }
        err << f.message << "\n";
        return kValidation;
    } catch (const ValidationError& e) {
        err << e.what() << "\n";
        return kValidation;
    } catch (const NumericalError& e) {
        err << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace blaine::cli
