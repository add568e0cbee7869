#include "fgbeam/tables.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fgbeam/csv.hpp"
#include "fgbeam/threads.hpp"

namespace fgbeam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Published midspan displacements [mm] and stresses [N/mm^2].
struct ConvRow {
    int mesh;
    double dts, c, cf;
};
const ConvRow kTable1[] = {{2, 256.29, 260.03, 259.25}, {4, 256.01, 259.33, 259.25},
                           {8, 255.96, 259.26, kNaN},   {16, 255.95, 259.25, kNaN},
                           {32, 255.95, 259.25, kNaN},  {64, kNaN, kNaN, kNaN},
                           {128, kNaN, kNaN, kNaN}};
const ConvRow kTable2[] = {{2, 280.63, 281.68, 281.15}, {4, 280.50, 281.21, 281.15},
                           {8, 280.47, 281.16, kNaN},   {16, 280.47, 281.15, kNaN},
                           {32, kNaN, 281.15, kNaN}};
const ConvRow kTable3[] = {{2, 223.42, 233.36, 232.71}, {4, 223.21, 232.77, 232.71},
                           {8, 223.17, 232.71, kNaN},   {16, 223.16, 232.71, kNaN},
                           {32, 223.16, kNaN, kNaN}};
const ConvRow kTable8[] = {{4, 48.305, 50.048, 50.173},  {8, 48.505, 50.374, 50.730},
                           {16, 48.715, 50.686, 50.836}, {32, 48.824, 50.829, 50.860},
                           {64, 48.852, 50.858, 50.863}, {128, 48.855, 50.861, 50.863},
                           {256, 48.855, 50.861, kNaN},  {512, kNaN, kNaN, kNaN},
                           {1024, kNaN, kNaN, kNaN}};

struct SweepRow {
    double p;
    double dts, c, cf, q4;
};
const SweepRow kTable4[] = {{0, 84.309, 84.308, 84.308, 84.321},
                            {1, 166.14, 169.02, 169.02, 168.31},
                            {2, 211.73, 217.43, 217.43, 216.29},
                            {5, 253.04, 259.25, 259.25, 258.67},
                            {10, 280.93, 284.84, 284.84, 285.18}};
const SweepRow kTable5[] = {{0, 84.309, 84.308, 84.308, 84.321},
                            {1, 161.99, 162.00, 162.00, 162.56},
                            {2, 212.88, 212.90, 212.90, 212.12},
                            {5, 281.08, 281.15, 281.15, 281.53},
                            {10, 314.71, 314.84, 314.84, 315.36}};
const SweepRow kTable6[] = {{0, 163.59, 166.98, 166.98, 166.92},
                            {1, 201.50, 208.63, 208.63, 208.25},
                            {2, 214.13, 222.47, 222.47, 221.55},
                            {5, 223.16, 232.71, 232.71, 232.59},
                            {10, 225.40, 235.53, 235.53, 235.57}};
const SweepRow kTable9[] = {{0, 34.618, 35.304, 35.305, 35.229},
                            {1, 43.337, 44.553, 44.554, 44.198},
                            {2, 46.409, 47.975, 47.972, 47.463},
                            {5, 48.855, 50.861, 50.863, 50.903},
                            {10, 49.621, 51.923, 51.925, 51.960}};

struct Table7Row {
    GradingType type;
    double dts, c, cf, q4;
};
const Table7Row kTable7[] = {{GradingType::TypeA, 4356.7, 98.054, 100.00, 99.557},
                             {GradingType::TypeB, 1217.6, 97.208, 100.00, 99.521},
                             {GradingType::TypeC, 3410.9, 97.535, 100.00, 99.547}};

// Converged mesh sizes used when a table reports one value per formulation.
constexpr int kSsMeshCF = 8, kSsMeshC = 16, kSsMeshDTS = 32;
constexpr int kCcMeshCF = 64, kCcMeshC = 128, kCcMeshDTS = 128;
constexpr int kTable7MeshCF = 16, kTable7MeshC = 32, kTable7MeshDTS = 32;

ScenarioConfig scenario(GradingType type, double p, BoundaryKind bc, ElementKind kind, int ne) {
    ScenarioConfig cfg;
    cfg.law = ScenarioConfig::default_law(type, p);
    cfg.bc = bc;
    cfg.kind = kind;
    cfg.n_elements = ne;
    return cfg;
}

double midspan_with(const SectionModel& section, const ScenarioConfig& cfg) {
    BeamModel model = cfg.beam_model();
    Solution sol = solve(section, model);
    return midspan_deflection(model, sol);
}

std::string pct(double computed, double reference) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%+.3f%%", 100.0 * (computed - reference) / reference);
    return buf;
}

CheckLine make_check(std::string label, double computed, double reference, bool gated,
                     double tol_abs, double tol_rel) {
    CheckLine c;
    c.label = std::move(label);
    c.computed = computed;
    c.reference = reference;
    c.gated = gated;
    if (gated) {
        bool ok = true;
        char buf[64];
        if (tol_abs > 0.0) {
            ok = std::abs(computed - reference) <= tol_abs;
            std::snprintf(buf, sizeof(buf), "|d| <= %g", tol_abs);
        } else {
            ok = std::abs(computed - reference) <= tol_rel * std::abs(reference);
            std::snprintf(buf, sizeof(buf), "|d| <= %g%%", 100.0 * tol_rel);
        }
        c.pass = ok;
        c.tolerance = buf;
    }
    return c;
}

double q4_midspan(GradingType type, double p, BoundaryKind bc) {
    ScenarioConfig cfg = scenario(type, p, bc, ElementKind::MixedCF, 2);
    Q4Model m = cfg.q4_model();
    Q4Solution sol = q4_solve(m);
    return q4_displacement(m, sol, 0.5 * m.geometry.L, 0.0);
}

TableRun run_convergence_table(int id, GradingType type, BoundaryKind bc,
                               std::span<const ConvRow> rows) {
    TableRun out;
    out.id = id;

    struct Job {
        int mesh;
        ElementKind kind;
        double value = kNaN;
    };
    std::vector<Job> jobs;
    for (const auto& r : rows)
        for (ElementKind k :
             {ElementKind::DisplacementDTS, ElementKind::MixedC, ElementKind::MixedCF})
            jobs.push_back({r.mesh, k});

    const ScenarioConfig base = scenario(type, 5.0, bc, ElementKind::MixedCF, 2);
    const SectionModel section(base.geometry, base.law, base.section);
    parallel_for(static_cast<int>(jobs.size()), [&](int i) {
        jobs[i].value = midspan_with(section, scenario(type, 5.0, bc, jobs[i].kind, jobs[i].mesh));
    });

    std::ostringstream csv;
    CsvWriter w(csv);
    w.comment("midspan axis deflection [mm], p = 5");
    const std::string cols[] = {"mesh",     "dts",       "dts_ref", "c",
                                "c_ref",  "cf",        "cf_ref"};
    w.header(cols);
    auto value_of = [&](int mesh, ElementKind k) {
        for (const auto& j : jobs)
            if (j.mesh == mesh && j.kind == k) return j.value;
        return kNaN;
    };
    auto cell = [](double v) { return std::isnan(v) ? std::string() : csv_number(v); };
    for (const auto& r : rows) {
        const std::string cells[] = {csv_number(r.mesh),
                                     cell(value_of(r.mesh, ElementKind::DisplacementDTS)),
                                     cell(r.dts),
                                     cell(value_of(r.mesh, ElementKind::MixedC)),
                                     cell(r.c),
                                     cell(value_of(r.mesh, ElementKind::MixedCF)),
                                     cell(r.cf)};
        w.row_mixed(cells);
    }
    out.csv = csv.str();

    if (id == 1) {
        out.checks.push_back(make_check("table1 cf@2", value_of(2, ElementKind::MixedCF), 259.25,
                                        true, 0.05, 0.0));
        out.checks.push_back(
            make_check("table1 c@8", value_of(8, ElementKind::MixedC), 259.25, true, 0.05, 0.0));
        out.checks.push_back(make_check("table1 dts@16", value_of(16, ElementKind::DisplacementDTS),
                                        255.95, true, 0.05, 0.0));
    }
    if (id == 8) {
        out.checks.push_back(make_check("table8 cf@64", value_of(64, ElementKind::MixedCF), 50.863,
                                        true, 0.05, 0.0));
    }
    for (const auto& r : rows) {
        auto add = [&](ElementKind k, double ref, const char* name) {
            if (std::isnan(ref)) return;
            out.checks.push_back(make_check("table" + std::to_string(id) + " " + name + "@" +
                                                std::to_string(r.mesh),
                                            value_of(r.mesh, k), ref, false, 0.0, 0.0));
        };
        add(ElementKind::DisplacementDTS, r.dts, "dts");
        add(ElementKind::MixedC, r.c, "c");
        add(ElementKind::MixedCF, r.cf, "cf");
    }
    return out;
}

TableRun run_sweep_table(int id, GradingType type, BoundaryKind bc, std::span<const SweepRow> rows,
                         double cf_rel_tol, const TableOptions& opts) {
    TableRun out;
    out.id = id;
    const bool cc = bc == BoundaryKind::ClampedClamped;
    const int mesh_cf = cc ? kCcMeshCF : kSsMeshCF;
    const int mesh_c = cc ? kCcMeshC : kSsMeshC;
    const int mesh_dts = cc ? kCcMeshDTS : kSsMeshDTS;

    struct Result {
        double dts, c, cf, q4 = kNaN;
    };
    std::vector<Result> res(std::size(rows));
    parallel_for(static_cast<int>(std::size(rows)), [&](int i) {
        const double p = rows[i].p;
        const ScenarioConfig base = scenario(type, p, bc, ElementKind::MixedCF, mesh_cf);
        const SectionModel section(base.geometry, base.law, base.section);
        res[i].dts = midspan_with(section, scenario(type, p, bc, ElementKind::DisplacementDTS, mesh_dts));
        res[i].c = midspan_with(section, scenario(type, p, bc, ElementKind::MixedC, mesh_c));
        res[i].cf = midspan_with(section, base);
        if (opts.with_q4) res[i].q4 = q4_midspan(type, p, bc);
    });

    std::ostringstream csv;
    CsvWriter w(csv);
    w.comment("midspan axis deflection [mm] per power-law index");
    const std::string cols[] = {"p",  "dts", "dts_ref", "c",  "c_ref", "cf",
                                "cf_ref", "cf_dev",    "q4", "q4_ref"};
    w.header(cols);
    for (std::size_t i = 0; i < std::size(rows); ++i) {
        std::vector<std::string> cells = {csv_number(rows[i].p),
                                          csv_number(res[i].dts),
                                          csv_number(rows[i].dts),
                                          csv_number(res[i].c),
                                          csv_number(rows[i].c),
                                          csv_number(res[i].cf),
                                          csv_number(rows[i].cf),
                                          pct(res[i].cf, rows[i].cf),
                                          opts.with_q4 ? csv_number(res[i].q4) : "",
                                          std::isnan(rows[i].q4) ? "" : csv_number(rows[i].q4)};
        w.row_mixed(cells);
    }
    out.csv = csv.str();

    for (std::size_t i = 0; i < std::size(rows); ++i) {
        char label[64];
        std::snprintf(label, sizeof(label), "table%d cf p=%g", id, rows[i].p);
        out.checks.push_back(make_check(label, res[i].cf, rows[i].cf, true, 0.0, cf_rel_tol));
        std::snprintf(label, sizeof(label), "table%d c p=%g", id, rows[i].p);
        out.checks.push_back(make_check(label, res[i].c, rows[i].c, false, 0.0, 0.0));
        if (opts.with_q4) {
            std::snprintf(label, sizeof(label), "table%d q4 p=%g", id, rows[i].p);
            out.checks.push_back(make_check(label, res[i].q4, rows[i].q4, true, 0.0, 0.005));
        }
    }
    return out;
}

double sigma_y_at(GradingType type, ElementKind kind, int mesh, bool fd) {
    ScenarioConfig cfg = scenario(type, 5.0, BoundaryKind::SimplySupported, kind, mesh);
    SectionModel section(cfg.geometry, cfg.law, cfg.section);
    BeamModel model = cfg.beam_model();
    Solution sol = solve(section, model);
    RecoveryOptions ropts;
    ropts.fd_derivatives = fd;
    StressRecovery rec(section, model, sol, ropts);
    return rec.transverse_stress(1500.0, 100.0);
}

TableRun run_table7(const TableOptions& opts) {
    TableRun out;
    out.id = 7;
    std::ostringstream csv;
    CsvWriter w(csv);
    w.comment("transverse normal stress at x = 1500 mm, y = 100 mm [N/mm^2], p = 5, SS");
    const std::string cols[] = {"type", "dts", "dts_ref", "c",  "c_ref",
                                "cf",   "cf_ref", "q4",  "q4_ref"};
    w.header(cols);

    for (const auto& row : kTable7) {
        const char* name = row.type == GradingType::TypeA ? "A"
                           : row.type == GradingType::TypeB ? "B" : "C";
        const double dts = sigma_y_at(row.type, ElementKind::DisplacementDTS, kTable7MeshDTS, false);
        const double c = sigma_y_at(row.type, ElementKind::MixedC, kTable7MeshC, false);
        const double cf = sigma_y_at(row.type, ElementKind::MixedCF, kTable7MeshCF, false);
        double q4v = kNaN;
        if (opts.with_q4) {
            ScenarioConfig cfg = scenario(row.type, 5.0, BoundaryKind::SimplySupported,
                                          ElementKind::MixedCF, 2);
            Q4Model m = cfg.q4_model();
            Q4Solution qsol = q4_solve(m);
            q4v = q4_stress(m, qsol, 1500.0, 100.0).sigma_y;
        }
        std::vector<std::string> cells = {name,
                                          csv_number(dts),
                                          csv_number(row.dts),
                                          csv_number(c),
                                          csv_number(row.c),
                                          csv_number(cf),
                                          csv_number(row.cf),
                                          opts.with_q4 ? csv_number(q4v) : "",
                                          csv_number(row.q4)};
        w.row_mixed(cells);

        out.checks.push_back(
            make_check(std::string("table7 cf type ") + name, cf, 100.00, true, 0.5, 0.0));
        out.checks.push_back(
            make_check(std::string("table7 c type ") + name, c, row.c, true, 0.0, 0.01));
        if (opts.with_q4)
            out.checks.push_back(
                make_check(std::string("table7 q4 type ") + name, q4v, row.q4, true, 0.0, 0.02));
    }
    out.csv = csv.str();
    return out;
}

} // namespace

bool TableRun::pass() const {
    for (const auto& c : checks)
        if (c.gated && !c.pass) return false;
    return true;
}

double solve_midspan(const ScenarioConfig& cfg) {
    SectionModel section(cfg.geometry, cfg.law, cfg.section);
    BeamModel model = cfg.beam_model();
    Solution sol = solve(section, model);
    return midspan_deflection(model, sol);
}

TableRun run_table(int id, const TableOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    TableRun out;
    switch (id) {
        case 1: out = run_convergence_table(1, GradingType::TypeA, BoundaryKind::SimplySupported, kTable1); break;
        case 2: out = run_convergence_table(2, GradingType::TypeB, BoundaryKind::SimplySupported, kTable2); break;
        case 3: out = run_convergence_table(3, GradingType::TypeC, BoundaryKind::SimplySupported, kTable3); break;
        case 4: out = run_sweep_table(4, GradingType::TypeA, BoundaryKind::SimplySupported, kTable4, 0.002, opts); break;
        case 5: out = run_sweep_table(5, GradingType::TypeB, BoundaryKind::SimplySupported, kTable5, 0.002, opts); break;
        case 6: out = run_sweep_table(6, GradingType::TypeC, BoundaryKind::SimplySupported, kTable6, 0.002, opts); break;
        case 7: out = run_table7(opts); break;
        case 8: out = run_convergence_table(8, GradingType::TypeC, BoundaryKind::ClampedClamped, kTable8); break;
        case 9: out = run_sweep_table(9, GradingType::TypeC, BoundaryKind::ClampedClamped, kTable9, 0.003, opts); break;
        default: throw std::invalid_argument("run_table: table id must be 1..9");
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

ConvergeRun run_converge(const ScenarioConfig& base, const std::vector<int>& meshes,
                         const std::vector<ElementKind>& kinds) {
    for (int m : meshes)
        if (m < 2 || m % 2 != 0)
            throw std::invalid_argument("run_converge: meshes must be even and >= 2");

    ConvergeRun out;
    std::vector<std::vector<double>> values(kinds.size(), std::vector<double>(meshes.size()));
    struct Job {
        std::size_t ik, im;
    };
    std::vector<Job> jobs;
    for (std::size_t ik = 0; ik < kinds.size(); ++ik)
        for (std::size_t im = 0; im < meshes.size(); ++im) jobs.push_back({ik, im});
    const SectionModel section(base.geometry, base.law, base.section);
    parallel_for(static_cast<int>(jobs.size()), [&](int i) {
        ScenarioConfig cfg = base;
        cfg.kind = kinds[jobs[i].ik];
        cfg.n_elements = meshes[jobs[i].im];
        values[jobs[i].ik][jobs[i].im] = midspan_with(section, cfg);
    });

    std::ostringstream csv;
    CsvWriter w(csv);
    w.comment("midspan axis deflection [mm] per mesh");
    std::vector<std::string> cols = {"mesh"};
    for (ElementKind k : kinds) cols.push_back(element_kind_name(k));
    w.header(cols);
    for (std::size_t im = 0; im < meshes.size(); ++im) {
        std::vector<double> row = {static_cast<double>(meshes[im])};
        for (std::size_t ik = 0; ik < kinds.size(); ++ik) row.push_back(values[ik][im]);
        w.row(row);
    }
    out.csv = csv.str();

    for (std::size_t ik = 0; ik < kinds.size(); ++ik) {
        std::optional<int> conv;
        for (std::size_t im = 0; im + 1 < meshes.size(); ++im) {
            if (std::abs(values[ik][im + 1] - values[ik][im]) < 5e-3) {
                conv = meshes[im];
                break;
            }
        }
        out.converged_at.emplace_back(kinds[ik], conv);
    }
    return out;
}

std::string run_profile(const ScenarioConfig& base, const std::vector<ElementKind>& kinds,
                        bool with_q4) {
    std::ostringstream csv;
    CsvWriter w(csv);
    w.comment("stresses [N/mm^2] at stations x [mm] through depth y [mm]");
    std::vector<std::string> cols = {"x",         "y",        "sigma_x",  "tau_xy",
                                     "sigma_y",   "sigma_max", "sigma_min", "formulation"};
    const bool std_col = base.standardize.has_value();
    if (std_col) cols.insert(cols.end() - 1, "sigma_y_std");
    w.header(cols);

    auto emit = [&](const std::vector<StressSample>& profile, const char* name) {
        std::vector<double> std_vals;
        if (std_col) {
            std::vector<double> sy;
            sy.reserve(profile.size());
            for (const auto& s : profile) sy.push_back(s.sigma_y);
            std_vals = standardize(sy, *base.standardize, base.q / base.geometry.b);
        }
        for (std::size_t i = 0; i < profile.size(); ++i) {
            const auto& s = profile[i];
            std::vector<std::string> cells = {csv_number(s.x),         csv_number(s.y),
                                              csv_number(s.sigma_x),   csv_number(s.tau_xy),
                                              csv_number(s.sigma_y),   csv_number(s.sigma_max),
                                              csv_number(s.sigma_min)};
            if (std_col) cells.push_back(csv_number(std_vals[i]));
            cells.push_back(name);
            w.row_mixed(cells);
        }
    };

    SectionModel section(base.geometry, base.law, base.section);
    for (ElementKind kind : kinds) {
        ScenarioConfig cfg = base;
        cfg.kind = kind;
        BeamModel model = cfg.beam_model();
        Solution sol = solve(section, model);
        RecoveryOptions ropts;
        ropts.fd_derivatives = base.fd_derivatives;
        StressRecovery rec(section, model, sol, ropts);
        for (double x : base.stations) {
            if (x < 0.0 || x > base.geometry.L)
                throw std::domain_error("run_profile: station outside the beam");
            emit(rec.profile(x, base.y_points), element_kind_name(kind));
        }
    }

    if (with_q4) {
        Q4Model m = base.q4_model();
        Q4Solution qsol = q4_solve(m);
        for (double x : base.stations) {
            std::vector<StressSample> profile;
            profile.reserve(base.y_points);
            for (int k = 0; k < base.y_points; ++k) {
                const double y = -0.5 * base.geometry.h +
                                 base.geometry.h * k / (base.y_points - 1);
                profile.push_back(q4_stress(m, qsol, x, y));
            }
            emit(profile, "q4");
        }
    }
    return csv.str();
}

} // namespace fgbeam
