#include "qjp/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "qjp/acceptance.hpp"
#include "qjp/conditioning.hpp"
#include "qjp/csv.hpp"
#include "qjp/geometry.hpp"
#include "qjp/measurement.hpp"
#include "qjp/meter_grid.hpp"
#include "qjp/qjp_dist.hpp"

namespace qjp {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw ValidationError(path + "." + item.key() + ": unknown key");
}

const json& require_field(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key))
        throw ValidationError(path + "." + key + ": missing required field");
    return obj.at(key);
}

double parse_real(const json& v, const std::string& path) {
    if (!v.is_number())
        throw ValidationError(path + ": expected a number");
    return v.get<double>();
}

Complex parse_complex(const json& v, const std::string& path) {
    if (v.is_number())
        return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex(v[0].get<double>(), v[1].get<double>());
    throw ValidationError(path + ": expected a number or [re, im] pair");
}

Vector parse_state(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty())
        throw ValidationError(path + ": expected a non-empty array of amplitudes");
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[static_cast<int>(i)] = parse_complex(v[i], path + "[" + std::to_string(i) + "]");
    return out;
}

Matrix parse_operator(const json& v, const std::string& path) {
    if (v.is_string()) {
        std::string name = v.get<std::string>();
        if (name == "pauli_x") return pauli_x();
        if (name == "pauli_y") return pauli_y();
        if (name == "pauli_z") return pauli_z();
        throw ValidationError(path + ": unknown named operator '" + name + "'");
    }
    if (!v.is_array() || v.empty())
        throw ValidationError(path + ": expected an operator name or a matrix");
    const auto n = v.size();
    Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const json& row = v[r];
        if (!row.is_array() || row.size() != n)
            throw ValidationError(path + "[" + std::to_string(r) + "]: expected a row of " +
                                  std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c)
            out(static_cast<int>(r), static_cast<int>(c)) =
                parse_complex(row[c], path + "[" + std::to_string(r) + "][" +
                                          std::to_string(c) + "]");
    }
    double scale = std::max(out.cwiseAbs().maxCoeff(), 1.0);
    if ((out - out.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ValidationError(path + ": operator is not Hermitian");
    return out;
}

std::vector<double> parse_g_sweep(const json& v, const std::string& path) {
    std::vector<double> out;
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(parse_real(v[i], path + "[" + std::to_string(i) + "]"));
    } else if (v.is_object()) {
        require_keys(v, path, {"from", "to", "count"});
        double from = parse_real(require_field(v, path, "from"), path + ".from");
        double to = parse_real(require_field(v, path, "to"), path + ".to");
        int count = static_cast<int>(parse_real(require_field(v, path, "count"), path + ".count"));
        if (count < 1)
            throw ValidationError(path + ".count: must be at least 1");
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
    } else {
        throw ValidationError(path + ": expected a list or a {from, to, count} range");
    }
    for (double g : out)
        if (!std::isfinite(g))
            throw ValidationError(path + ": sweep values must be finite");
    return out;
}

MeterSpec parse_meter(const json& v, const std::string& path) {
    require_keys(v, path, {"n_points", "dx", "h"});
    MeterSpec m;
    if (v.contains("n_points"))
        m.n_points = static_cast<int>(parse_real(v.at("n_points"), path + ".n_points"));
    if (v.contains("dx"))
        m.dx = parse_real(v.at("dx"), path + ".dx");
    if (v.contains("h"))
        m.h = parse_real(v.at("h"), path + ".h");
    if (m.n_points < 16 || (m.n_points & (m.n_points - 1)) != 0)
        throw ValidationError(path + ".n_points: must be a power of two, at least 16");
    if (!(m.dx > 0.0))
        throw ValidationError(path + ".dx: must be positive");
    double L = m.n_points * m.dx;
    if (!(m.h >= 4.0 * m.dx) || !(m.h <= L / 8.0))
        throw ValidationError(path + ".h: must satisfy 4*dx <= h <= L/8");
    return m;
}

void check_aliasing(const Scenario& s, double max_eig, const std::string& path) {
    double L = s.meter.n_points * s.meter.dx;
    for (double g : s.g_values)
        if (std::abs(g) * max_eig + 4.0 * s.meter.h > L / 2.0)
            throw ValidationError(path + ": sweep exceeds the aliasing-safe range");
}

double max_abs_eigenvalue(const Matrix& op) {
    SpectralDecomposition dec = spectral_decompose(op, default_eig_tol(op));
    double m = 0.0;
    for (double e : dec.eigenvalues)
        m = std::max(m, std::abs(e));
    return m;
}

template <typename F>
void parallel_for(int n, int jobs, F&& body) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers)
        w.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

SpectralDecomposition rank1_from_vector(const PureState& b) {
    Matrix p = b.amplitudes() * b.amplitudes().adjoint();
    SpectralDecomposition dec;
    dec.eigenvalues = {0.0, 1.0};
    dec.projectors = {Matrix::Identity(b.dim(), b.dim()) - p, p};
    return dec;
}

std::string alpha_label(Complex a) {
    auto fmt = [](double v) {
        std::string s = format_number(v);
        for (char& c : s)
            if (c == '.' || c == '-' || c == '+')
                c = (c == '-') ? 'm' : '_';
        return s;
    };
    return fmt(a.real()) + "_" + fmt(a.imag());
}

struct Reporter {
    ReportBundle bundle;
    std::vector<std::string> errors;

    void check(const std::string& name, double value, double tol) {
        bool passed = value <= tol;
        bundle.checks.push_back({name, value, tol, passed});
        bundle.ok = bundle.ok && passed;
    }

    void error(const std::string& msg) {
        errors.push_back(msg);
        bundle.ok = false;
    }

    void finish(const Scenario& s, bool plot) {
        json summary;
        summary["kind"] = s.kind;
        summary["seed"] = s.seed;
        summary["passed"] = bundle.ok;
        summary["checks"] = json::array();
        for (const auto& c : bundle.checks) {
            json entry;
            entry["name"] = c.name;
            entry["value"] = c.value;
            entry["tolerance"] = c.tolerance;
            entry["passed"] = c.passed;
            summary["checks"].push_back(entry);
        }
        summary["errors"] = errors;
        bundle.summary_json = summary.dump(2) + "\n";

        if (plot && !bundle.tables.empty()) {
            std::string t = bundle.tables.front().first;
            bundle.plot_script =
                "set datafile separator ','\n"
                "set key autotitle columnhead\n"
                "set terminal pngcairo size 900,600\n"
                "set output '" + s.prefix + ".png'\n"
                "plot '" + t + "' using 1:3 with linespoints\n";
        }
    }
};

void run_um(const Scenario& s, int jobs, Reporter& rep) {
    SpectralDecomposition a = spectral_decompose(s.op_a, default_eig_tol(s.op_a));
    PureState phi(s.state);
    Grid grid(s.meter.n_points, s.meter.dx);
    GridWavefunction psi = gaussian_state(grid, 0.0, s.meter.h);
    Density rho_q = position_density(psi);
    Density rho_p = momentum_density(psi);
    ProbTable born = born_probabilities(a, phi);
    double ea = 0.0;
    for (const auto& [av, w] : born.atoms)
        ea += av * w;
    double eq0 = rho_q.mean(), ep0 = rho_p.mean();

    struct Row {
        double eq, ep, conv;
    };
    std::vector<Row> rows(s.g_values.size());
    parallel_for(static_cast<int>(s.g_values.size()), jobs, [&](int i) {
        double g = s.g_values[i];
        CompositeState cs = evolve_composite(a, phi, psi, g);
        Density sim = um_outcome_density(cs, MeterObservable::position);
        Density oracle = spectral_convolution(rho_q, born, g);
        double l1 = 0.0;
        for (int k = 0; k < grid.n_points; ++k)
            l1 += std::abs(sim.samples[k] - oracle.samples[k]) * grid.dx;
        rows[i] = {sim.mean(), um_expectation(cs, MeterObservable::momentum), l1};
    });

    CsvWriter csv({"g", "quantity", "value", "analytic_value", "abs_error"});
    double worst_q = 0.0, worst_p = 0.0, worst_conv = 0.0;
    for (std::size_t i = 0; i < s.g_values.size(); ++i) {
        double g = s.g_values[i];
        double exp_q = eq0 + g * ea;
        double err_q = std::abs(rows[i].eq - exp_q);
        double err_p = std::abs(rows[i].ep - ep0);
        worst_q = std::max(worst_q, err_q);
        worst_p = std::max(worst_p, err_p);
        worst_conv = std::max(worst_conv, rows[i].conv);
        csv.add_raw_row({format_number(g), "E_Q", format_number(rows[i].eq),
                         format_number(exp_q), format_number(err_q)});
        csv.add_raw_row({format_number(g), "E_P", format_number(rows[i].ep),
                         format_number(ep0), format_number(err_p)});
        csv.add_raw_row({format_number(g), "density_convolution_l1",
                         format_number(rows[i].conv), format_number(0.0),
                         format_number(rows[i].conv)});
    }
    rep.bundle.tables.emplace_back(s.prefix + "_sweep.csv", csv.str());
    rep.check("position_shift_law", worst_q, 1e-8);
    rep.check("momentum_invariance", worst_p, 1e-8);
    rep.check("density_convolution_law", worst_conv, 1e-8);
}

void run_cm(const Scenario& s, int jobs, Reporter& rep) {
    SpectralDecomposition a = spectral_decompose(s.op_a, default_eig_tol(s.op_a));
    SpectralDecomposition b = spectral_decompose(s.op_b, default_eig_tol(s.op_b));
    PureState phi(s.state);
    Grid grid(s.meter.n_points, s.meter.dx);
    GridWavefunction psi = gaussian_state(grid, 0.0, s.meter.h);

    struct Row {
        double eq = 0.0, ep = 0.0, bound_q = 0.0, bound_p = 0.0;
        bool defined = false;
    };
    std::vector<Row> rows(s.g_values.size());
    parallel_for(static_cast<int>(s.g_values.size()), jobs, [&](int i) {
        CompositeState cs = evolve_composite(a, phi, psi, s.g_values[i]);
        Row row;
        row.bound_q = amplification_bound(cs, MeterObservable::position);
        row.bound_p = amplification_bound(cs, MeterObservable::momentum);
        try {
            row.eq = cm_conditional_expectation(cs, b, s.select_b, MeterObservable::position);
            row.ep = cm_conditional_expectation(cs, b, s.select_b, MeterObservable::momentum);
            row.defined = true;
        } catch (const IndefiniteConditioning&) {
            row.defined = false;
        }
        rows[i] = row;
    });

    CsvWriter csv({"g", "quantity", "value", "amplification_bound", "abs_error"});
    double worst = -1.0;
    int undefined = 0;
    for (std::size_t i = 0; i < s.g_values.size(); ++i) {
        double g = s.g_values[i];
        if (!rows[i].defined) {
            ++undefined;
            rep.error("conditional expectation indefinite at g = " + format_number(g));
            continue;
        }
        double margin_q = std::abs(rows[i].eq) - rows[i].bound_q;
        double margin_p = std::abs(rows[i].ep) - rows[i].bound_p;
        worst = std::max({worst, margin_q, margin_p});
        csv.add_raw_row({format_number(g), "E_Q_given_b", format_number(rows[i].eq),
                         format_number(rows[i].bound_q), format_number(margin_q)});
        csv.add_raw_row({format_number(g), "E_P_given_b", format_number(rows[i].ep),
                         format_number(rows[i].bound_p), format_number(margin_p)});
    }
    rep.bundle.tables.emplace_back(s.prefix + "_sweep.csv", csv.str());
    rep.check("amplification_bound_respected", worst, 1e-9);
}

void run_gaussian(const Scenario& s, int jobs, Reporter& rep) {
    PureState phi_i(s.state), phi_f(s.post_state);
    Matrix amat = Matrix::Zero(2, 2);
    amat(0, 0) = s.a1;
    amat(1, 1) = s.a2;
    SpectralDecomposition a = spectral_decompose(amat, default_eig_tol(amat));
    SpectralDecomposition b = rank1_from_vector(phi_f);
    Complex c1 = std::conj(phi_f.amplitudes()[0]) * phi_i.amplitudes()[0];
    Complex c2 = std::conj(phi_f.amplitudes()[1]) * phi_i.amplitudes()[1];
    Grid grid(s.meter.n_points, s.meter.dx);
    GridWavefunction psi = gaussian_state(grid, 0.0, s.meter.h);

    struct Row {
        double eq, ep;
    };
    std::vector<Row> rows(s.g_values.size());
    parallel_for(static_cast<int>(s.g_values.size()), jobs, [&](int i) {
        CompositeState cs = evolve_composite(a, phi_i, psi, s.g_values[i]);
        rows[i] = {cm_conditional_expectation(cs, b, 1.0, MeterObservable::position),
                   cm_conditional_expectation(cs, b, 1.0, MeterObservable::momentum)};
    });

    CsvWriter csv({"g", "quantity", "value", "analytic_value", "abs_error"});
    double worst = 0.0;
    for (std::size_t i = 0; i < s.g_values.size(); ++i) {
        double g = s.g_values[i];
        GaussianReadout ex = gaussian_cm_analytic(s.a1, s.a2, c1, c2, g, s.meter.h);
        double err_q = std::abs(rows[i].eq - ex.mean_x);
        double err_p = std::abs(rows[i].ep - ex.mean_p);
        worst = std::max({worst, err_q, err_p});
        csv.add_raw_row({format_number(g), "E_x", format_number(rows[i].eq),
                         format_number(ex.mean_x), format_number(err_q)});
        csv.add_raw_row({format_number(g), "E_p", format_number(rows[i].ep),
                         format_number(ex.mean_p), format_number(err_p)});
    }
    rep.bundle.tables.emplace_back(s.prefix + "_sweep.csv", csv.str());
    rep.check("matches_closed_form", worst, 1e-6);
}

void run_qjp(const Scenario& s, int jobs, Reporter& rep) {
    (void)jobs;
    SpectralDecomposition a = spectral_decompose(s.op_a, default_eig_tol(s.op_a));
    SpectralDecomposition b = spectral_decompose(s.op_b, default_eig_tol(s.op_b));
    PureState phi(s.state);
    RandomSource rng(s.seed);
    ProbTable born_a = born_probabilities(a, phi);
    ProbTable born_b = born_probabilities(b, phi);

    auto born_weight = [](const ProbTable& t, double outcome) {
        for (const auto& [o, w] : t.atoms)
            if (std::abs(o - outcome) <= 1e-9)
                return w;
        return 0.0;
    };

    auto emit = [&](const QuasiProbTable& table, const std::string& label) {
        CsvWriter csv({"re_a", "im_a", "b", "re_w", "im_w"});
        for (const auto& atom : table.atoms)
            csv.add_row({atom.a.real(), atom.a.imag(), atom.b, atom.w.real(), atom.w.imag()});
        rep.bundle.tables.emplace_back(s.prefix + "_" + label + ".csv", csv.str());

        QjpMarginals marg = marginals_and_moments(table);
        double err = std::abs(table.total_weight() - 1.0);
        for (const auto& [o, w] : born_a.atoms) {
            double found = 0.0;
            for (const auto& [mo, mw] : marg.a_marginal.atoms)
                if (std::abs(mo - o) <= 1e-9)
                    found = mw;
            err = std::max(err, std::abs(found - w));
        }
        for (const auto& [o, w] : born_b.atoms)
            err = std::max(err, std::abs(born_weight(marg.b_marginal, o) - w));
        rep.check(label + "_qualification", err, 1e-10);

        double fourier = 0.0;
        for (int k = 0; k < 25; ++k) {
            double t = rng.uniform(-3.0, 3.0);
            Complex sfreq(rng.uniform(-3.0, 3.0), 0.0);
            if (table.family == QjpFamily::convolutive)
                sfreq.imag(rng.uniform(-3.0, 3.0));
            fourier = std::max(fourier,
                               std::abs(fourier_sum(table, sfreq, t) -
                                        char_function(table.family, table.alpha, a, b, phi,
                                                      sfreq, t)));
        }
        rep.check(label + "_fourier_consistency", fourier, 1e-10);
    };

    auto table_distance = [](const QuasiProbTable& lhs, const QuasiProbTable& rhs) {
        auto lookup = [](const QuasiProbTable& t, Complex av, double bv) {
            Complex acc = 0.0;
            for (const auto& atom : t.atoms)
                if (std::abs(atom.b - bv) <= 1e-9 && std::abs(atom.a - av) <= 1e-9)
                    acc += atom.w;
            return acc;
        };
        double worst = 0.0;
        for (const auto& atom : lhs.atoms)
            worst = std::max(worst, std::abs(atom.w - lookup(rhs, atom.a, atom.b)));
        for (const auto& atom : rhs.atoms)
            worst = std::max(worst, std::abs(atom.w - lookup(lhs, atom.a, atom.b)));
        return worst;
    };

    for (const std::string& family : s.families) {
        if (family == "kd") {
            emit(qjp_kirkwood_dirac(a, b, phi), "kd");
            continue;
        }
        for (Complex alpha : s.alphas) {
            std::string label = family + "_" + alpha_label(alpha);
            if (family == "additive") {
                QuasiProbTable table = qjp_additive(alpha, a, b, phi);
                emit(table, label);
                rep.check(label + "_conjugation",
                          table_distance(conjugate(table),
                                         qjp_additive(-std::conj(alpha), a, b, phi)),
                          1e-12);
            } else if (family == "convolutive") {
                QuasiProbTable table = qjp_convolutive(alpha, a, b, phi);
                emit(table, label);
                rep.check(label + "_conjugation",
                          table_distance(conjugate(table), qjp_convolutive(-alpha, a, b, phi)),
                          1e-12);
            } else {
                throw ValidationError("sweep.families: unknown family '" + family + "'");
            }
        }
    }
}

void run_geometry(const Scenario& s, int jobs, Reporter& rep) {
    (void)jobs;
    SpectralDecomposition bdec = spectral_decompose(s.op_b, default_eig_tol(s.op_b));
    SpectralDecomposition adec = spectral_decompose(s.op_a, default_eig_tol(s.op_a));
    PureState psi(s.state);
    RandomSource rng(s.seed);

    for (Complex alpha_c : s.alphas) {
        if (alpha_c.imag() != 0.0 || alpha_c.real() < -1.0 || alpha_c.real() > 1.0)
            throw ValidationError("sweep.alpha: geometry requires real parameters in [-1, 1]");
        double alpha = alpha_c.real();
        std::string label = "alpha_" + alpha_label(alpha_c);
        OperatorInnerProduct ip(psi, alpha);
        ConditionalFunction proj = project_onto_algebra(alpha, s.op_a, bdec, psi);

        CsvWriter csv({"b", "re", "im", "defined"});
        for (const auto& e : proj.entries)
            csv.add_row({e.b, e.value.real(), e.value.imag(), e.defined ? 1.0 : 0.0});
        rep.bundle.tables.emplace_back(s.prefix + "_" + label + ".csv", csv.str());

        Matrix p = function_of_B(bdec, proj);
        double orth = 0.0;
        for (int k = 0; k < 20; ++k) {
            Matrix fb = Matrix::Zero(bdec.dim(), bdec.dim());
            for (std::size_t i = 0; i < bdec.eigenvalues.size(); ++i)
                fb += rng.uniform(-2.0, 2.0) * bdec.projectors[i];
            orth = std::max(orth, std::abs(inner_product(ip, fb, s.op_a - p)));
        }
        rep.check(label + "_projection_orthogonality", orth, 1e-10);

        double gap = 0.0;
        for (int k = 0; k < 50; ++k) {
            std::vector<double> f =
                rng.real_function(static_cast<int>(bdec.eigenvalues.size()), -2.0, 2.0);
            gap = std::max(gap, pythagorean_residual(alpha, s.op_a, bdec, psi, f).gap);
        }
        rep.check(label + "_pythagorean_gap", gap, 1e-10);

        QjpMarginals marg = marginals_and_moments(qjp_additive(alpha, bdec, adec, psi));
        Complex centred = marg.moment[1][1] - marg.moment[1][0] * marg.moment[0][1];
        rep.check(label + "_covariance_cross_moment",
                  std::abs(quantum_covariance(alpha, s.op_a, s.op_b, psi) - centred), 1e-10);
    }
}

void run_acceptance_kind(const Scenario& s, Reporter& rep) {
    AcceptanceReport report = run_acceptance(s.seed);
    rep.bundle.tables.emplace_back(s.prefix + "_acceptance.csv", report.csv);
    for (const auto& c : report.criteria) {
        rep.bundle.checks.push_back({"criterion_" + std::to_string(c.index) + "_" + c.name,
                                     c.worst_error, c.tolerance, c.passed});
        rep.bundle.ok = rep.bundle.ok && c.passed;
    }
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ValidationError("scenario: expected a JSON object");

    require_keys(doc, "scenario", {"kind", "seed", "output", "system", "meter", "sweep"});
    Scenario s;
    const json& kind = require_field(doc, "scenario", "kind");
    if (!kind.is_string())
        throw ValidationError("scenario.kind: expected a string");
    s.kind = kind.get<std::string>();

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned())
            throw ValidationError("scenario.seed: expected a non-negative integer");
        s.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("output")) {
        require_keys(doc["output"], "output", {"prefix"});
        if (doc["output"].contains("prefix")) {
            if (!doc["output"]["prefix"].is_string())
                throw ValidationError("output.prefix: expected a string");
            s.prefix = doc["output"]["prefix"].get<std::string>();
        }
    }

    auto system_of = [&](const std::set<std::string>& allowed) -> const json& {
        const json& sys = require_field(doc, "scenario", "system");
        if (!sys.is_object())
            throw ValidationError("system: expected an object");
        require_keys(sys, "system", allowed);
        return sys;
    };
    auto sweep_of = [&](const std::set<std::string>& allowed) -> const json& {
        const json& sw = require_field(doc, "scenario", "sweep");
        if (!sw.is_object())
            throw ValidationError("sweep: expected an object");
        require_keys(sw, "sweep", allowed);
        return sw;
    };

    if (s.kind == "um") {
        const json& sys = system_of({"operator", "state"});
        s.op_a = parse_operator(require_field(sys, "system", "operator"), "system.operator");
        s.state = parse_state(require_field(sys, "system", "state"), "system.state");
        s.meter = parse_meter(require_field(doc, "scenario", "meter"), "meter");
        s.g_values = parse_g_sweep(require_field(sweep_of({"g"}), "sweep", "g"), "sweep.g");
        if (s.op_a.rows() != s.state.size())
            throw ValidationError("system.state: dimension does not match system.operator");
        check_aliasing(s, max_abs_eigenvalue(s.op_a), "sweep.g");
    } else if (s.kind == "cm") {
        const json& sys = system_of({"operator", "state", "conditioning", "select"});
        s.op_a = parse_operator(require_field(sys, "system", "operator"), "system.operator");
        s.state = parse_state(require_field(sys, "system", "state"), "system.state");
        s.op_b = parse_operator(require_field(sys, "system", "conditioning"),
                                "system.conditioning");
        s.select_b = parse_real(require_field(sys, "system", "select"), "system.select");
        s.meter = parse_meter(require_field(doc, "scenario", "meter"), "meter");
        s.g_values = parse_g_sweep(require_field(sweep_of({"g"}), "sweep", "g"), "sweep.g");
        if (s.op_a.rows() != s.state.size())
            throw ValidationError("system.state: dimension does not match system.operator");
        if (s.op_b.rows() != s.op_a.rows())
            throw ValidationError("system.conditioning: dimension does not match system.operator");
        check_aliasing(s, max_abs_eigenvalue(s.op_a), "sweep.g");
    } else if (s.kind == "gaussian") {
        const json& sys = system_of({"a1", "a2", "pre_state", "post_state"});
        s.a1 = parse_real(require_field(sys, "system", "a1"), "system.a1");
        s.a2 = parse_real(require_field(sys, "system", "a2"), "system.a2");
        s.state = parse_state(require_field(sys, "system", "pre_state"), "system.pre_state");
        s.post_state =
            parse_state(require_field(sys, "system", "post_state"), "system.post_state");
        if (s.state.size() != 2 || s.post_state.size() != 2)
            throw ValidationError("system.pre_state: dichotomic model requires dimension 2");
        s.meter = parse_meter(require_field(doc, "scenario", "meter"), "meter");
        s.g_values = parse_g_sweep(require_field(sweep_of({"g"}), "sweep", "g"), "sweep.g");
        check_aliasing(s, std::max(std::abs(s.a1), std::abs(s.a2)), "sweep.g");
    } else if (s.kind == "qjp" || s.kind == "geometry") {
        const json& sys = system_of({"operator_a", "operator_b", "state"});
        s.op_a = parse_operator(require_field(sys, "system", "operator_a"), "system.operator_a");
        s.op_b = parse_operator(require_field(sys, "system", "operator_b"), "system.operator_b");
        s.state = parse_state(require_field(sys, "system", "state"), "system.state");
        if (s.op_a.rows() != s.state.size() || s.op_b.rows() != s.state.size())
            throw ValidationError("system.state: dimension does not match the operators");
        if (s.kind == "qjp") {
            const json& sw = sweep_of({"alpha", "families"});
            const json& alphas = require_field(sw, "sweep", "alpha");
            if (!alphas.is_array() || alphas.empty())
                throw ValidationError("sweep.alpha: expected a non-empty array");
            for (std::size_t i = 0; i < alphas.size(); ++i)
                s.alphas.push_back(
                    parse_complex(alphas[i], "sweep.alpha[" + std::to_string(i) + "]"));
            if (sw.contains("families")) {
                for (const auto& f : sw["families"]) {
                    if (!f.is_string())
                        throw ValidationError("sweep.families: expected strings");
                    s.families.push_back(f.get<std::string>());
                }
            } else {
                s.families = {"additive", "convolutive", "kd"};
            }
        } else {
            const json& sw = sweep_of({"alpha"});
            const json& alphas = require_field(sw, "sweep", "alpha");
            if (!alphas.is_array() || alphas.empty())
                throw ValidationError("sweep.alpha: expected a non-empty array");
            for (std::size_t i = 0; i < alphas.size(); ++i)
                s.alphas.push_back(
                    parse_complex(alphas[i], "sweep.alpha[" + std::to_string(i) + "]"));
        }
    } else if (s.kind == "acceptance") {
        if (doc.contains("system") || doc.contains("meter") || doc.contains("sweep"))
            throw ValidationError("scenario: acceptance kind takes no system/meter/sweep");
    } else {
        throw ValidationError("scenario.kind: unknown kind '" + s.kind + "'");
    }
    return s;
}

ReportBundle run_scenario(const Scenario& s, int jobs, bool plot) {
    Reporter rep;
    try {
        if (s.kind == "um")
            run_um(s, jobs, rep);
        else if (s.kind == "cm")
            run_cm(s, jobs, rep);
        else if (s.kind == "gaussian")
            run_gaussian(s, jobs, rep);
        else if (s.kind == "qjp")
            run_qjp(s, jobs, rep);
        else if (s.kind == "geometry")
            run_geometry(s, jobs, rep);
        else if (s.kind == "acceptance")
            run_acceptance_kind(s, rep);
        else
            throw ValidationError("scenario.kind: unknown kind '" + s.kind + "'");
    } catch (const Error& e) {
        rep.error(e.what());
    }
    rep.finish(s, plot);
    return rep.bundle;
}

} // namespace qjp
