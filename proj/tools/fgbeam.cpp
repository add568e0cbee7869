#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fgbeam/csv.hpp"
#include "fgbeam/tables.hpp"

using namespace fgbeam;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::string formulation;
    int mesh = 0;
    double p = -1.0;
    std::string bc;
};

ScenarioConfig make_config(const CommonFlags& f) {
    ScenarioConfig cfg;
    if (!f.config_path.empty()) cfg = load_scenario_file(f.config_path);
    if (!f.formulation.empty()) cfg.kind = parse_element_kind(f.formulation);
    if (f.mesh > 0) cfg.n_elements = f.mesh;
    if (f.p >= 0.0) {
        const auto law = cfg.law;
        cfg.law = ScenarioConfig::default_law(law.kind, f.p);
        cfg.law.E_m = law.E_m;
        cfg.law.E_c = law.E_c;
        cfg.law.nu = law.nu;
        cfg.law.h0 = law.h0;
        cfg.law.h1 = law.h1;
        cfg.law.h2 = law.h2;
        cfg.law.h3 = law.h3;
    }
    if (!f.bc.empty()) cfg.bc = parse_boundary_kind(f.bc);
    return cfg;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "scenario config file");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--formulation", f.formulation, "element formulation: cf|c|dts");
    cmd->add_option("--mesh", f.mesh, "element count");
    cmd->add_option("--p", f.p, "power-law index override");
    cmd->add_option("--bc", f.bc, "boundary conditions: ss|cc");
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    std::cout << "wrote " << path.string() << "\n";
    return out;
}

void cmd_section(const CommonFlags& f) {
    ScenarioConfig cfg = make_config(f);
    SectionModel sec(cfg.geometry, cfg.law, cfg.section);

    {
        auto out = open_out(f.out_dir, "section_matrices.csv");
        CsvWriter w(out);
        w.comment("section matrices; moduli in N/mm^2, lengths in mm");
        const std::string cols[] = {"matrix", "i", "j", "value"};
        w.header(cols);
        auto dump = [&](const char* name, const Eigen::MatrixXd& m) {
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    const std::string cells[] = {name, std::to_string(i), std::to_string(j),
                                                 csv_number(m(i, j))};
                    w.row_mixed(cells);
                }
        };
        dump("Dn", sec.Dn());
        dump("Fn", sec.Fn());
        dump("Dt", sec.Dt());
        dump("fs", sec.fs());
        dump("fss", sec.fss());
        const std::string d55[] = {"D55", "0", "0", csv_number(sec.D55())};
        w.row_mixed(d55);
    }
    {
        auto out = open_out(f.out_dir, "section_profiles.csv");
        CsvWriter w(out);
        w.comment("equilibrium stress profiles per unit moment derivative");
        const std::string cols[] = {"y", "S_w", "S_theta", "T_w", "T_theta"};
        w.header(cols);
        const int n = 201;
        for (int k = 0; k < n; ++k) {
            const double y = -0.5 * cfg.geometry.h + cfg.geometry.h * k / (n - 1);
            const RowVec2 s = sec.shear_profile(y);
            const RowVec2 t = sec.normal_profile(y);
            const double row[] = {y, s(0), s(1), t(0), t(1)};
            w.row(row);
        }
    }
}

void cmd_solve(const CommonFlags& f) {
    ScenarioConfig cfg = make_config(f);
    SectionModel sec(cfg.geometry, cfg.law, cfg.section);
    BeamModel model = cfg.beam_model();
    Solution sol = solve(sec, model);

    auto out = open_out(f.out_dir, "dofs.csv");
    CsvWriter w(out);
    w.comment("nodal DOFs; displacements in mm, derivatives dimensionless-ish (per mm)");
    const std::string cols[] = {"node", "x",     "u",   "u_x", "w",
                                "w_x",  "theta", "theta_x", "phi", "phi_x"};
    w.header(cols);
    const double Le = model.element_length();
    for (int n = 0; n < model.n_nodes(); ++n) {
        std::vector<double> row = {static_cast<double>(n), n * Le};
        for (int k = 0; k < kDofPerNode; ++k) row.push_back(sol.dof(n, k));
        w.row(row);
    }
    if (model.n_elements % 2 == 0)
        std::cout << "midspan axis deflection: " << csv_number(midspan_deflection(model, sol))
                  << " mm\n";
    std::cout << "solve residual: " << csv_number(sol.residual) << "\n";
}

void cmd_stress(const CommonFlags& f, bool with_q4) {
    ScenarioConfig cfg = make_config(f);
    auto out = open_out(f.out_dir, "stress.csv");
    out << run_profile(cfg, {cfg.kind}, with_q4);
}

void cmd_q4(const CommonFlags& f) {
    ScenarioConfig cfg = make_config(f);
    Q4Model m = cfg.q4_model();
    Q4Solution sol = q4_solve(m);

    {
        auto out = open_out(f.out_dir, "q4_dofs.csv");
        CsvWriter w(out);
        w.comment("plane-stress nodal displacements [mm]");
        const std::string cols[] = {"x", "y", "ux", "uy"};
        w.header(cols);
        for (int i = 0; i <= m.mx; ++i)
            for (int j = 0; j <= m.my; ++j) {
                const double row[] = {m.x_of(i), m.y_of(j), sol.ux(m, i, j), sol.uy(m, i, j)};
                w.row(row);
            }
    }
    {
        auto out = open_out(f.out_dir, "q4_stress.csv");
        CsvWriter w(out);
        w.comment("plane-stress stresses [N/mm^2] at the configured stations");
        const std::string cols[] = {"x",         "y",         "sigma_x",   "tau_xy",
                                    "sigma_y",   "sigma_max", "sigma_min", "formulation"};
        w.header(cols);
        for (double x : cfg.stations)
            for (int k = 0; k < cfg.y_points; ++k) {
                const double y =
                    -0.5 * cfg.geometry.h + cfg.geometry.h * k / (cfg.y_points - 1);
                const StressSample s = q4_stress(m, sol, x, y);
                const std::string cells[] = {csv_number(s.x),         csv_number(s.y),
                                             csv_number(s.sigma_x),   csv_number(s.tau_xy),
                                             csv_number(s.sigma_y),   csv_number(s.sigma_max),
                                             csv_number(s.sigma_min), "q4"};
                w.row_mixed(cells);
            }
    }
    std::cout << "midspan deflection u_y(L/2, 0): "
              << csv_number(q4_displacement(m, sol, 0.5 * m.geometry.L, 0.0)) << " mm\n";
    std::cout << "solve residual: " << csv_number(sol.residual) << "\n";
}

int cmd_table(int id, const CommonFlags& f, bool with_q4) {
    TableOptions opts;
    opts.with_q4 = with_q4;
    TableRun run = run_table(id, opts);

    auto out = open_out(f.out_dir, "table" + std::to_string(id) + ".csv");
    out << run.csv;

    bool pass = true;
    for (const auto& c : run.checks) {
        if (!c.gated) continue;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.label << ": computed "
                  << csv_number(c.computed) << " vs " << csv_number(c.reference) << " ("
                  << c.tolerance << ")\n";
        pass = pass && c.pass;
    }
    std::cout << "table " << id << (pass ? " PASS" : " FAIL") << " in " << run.seconds << " s\n";
    return pass ? 0 : 1;
}

int cmd_converge(const CommonFlags& f, const std::string& meshes_arg) {
    ScenarioConfig cfg = make_config(f);
    std::vector<int> meshes;
    std::stringstream ss(meshes_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) meshes.push_back(std::stoi(tok));
    if (meshes.empty()) meshes = {2, 4, 8, 16, 32, 64, 128};

    std::vector<ElementKind> kinds;
    if (!f.formulation.empty()) kinds.push_back(parse_element_kind(f.formulation));
    else kinds = {ElementKind::MixedCF, ElementKind::MixedC, ElementKind::DisplacementDTS};

    ConvergeRun run = run_converge(cfg, meshes, kinds);
    auto out = open_out(f.out_dir, "converge.csv");
    out << run.csv;
    for (const auto& [kind, mesh] : run.converged_at) {
        std::cout << element_kind_name(kind) << ": ";
        if (mesh) std::cout << "converged at " << *mesh << " elements\n";
        else std::cout << "not converged within the mesh list\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"static analysis of functionally graded beams"};
    app.require_subcommand(1);

    CommonFlags f_section, f_solve, f_stress, f_q4, f_table, f_conv;
    bool stress_q4 = false, table_q4 = false;
    int table_id = 1;
    std::string meshes_arg;

    auto* c_section = app.add_subcommand("section", "dump section matrices and stress profiles");
    add_common(c_section, f_section);

    auto* c_solve = app.add_subcommand("solve", "solve a beam scenario, write nodal DOFs");
    add_common(c_solve, f_solve);

    auto* c_stress = app.add_subcommand("stress", "recover stresses at the configured stations");
    add_common(c_stress, f_stress);
    c_stress->add_flag("--with-q4", stress_q4, "overlay the plane-stress reference profiles");

    auto* c_q4 = app.add_subcommand("q4", "plane-stress reference solve");
    add_common(c_q4, f_q4);

    auto* c_table = app.add_subcommand("table", "reproduce a published benchmark table");
    c_table->add_option("id", table_id, "table number 1..9")->required();
    add_common(c_table, f_table);
    c_table->add_flag("--with-q4", table_q4, "also solve the plane-stress columns");

    auto* c_conv = app.add_subcommand("converge", "mesh-refinement sweep");
    add_common(c_conv, f_conv);
    c_conv->add_option("--meshes", meshes_arg, "comma-separated element counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_section->parsed()) cmd_section(f_section);
        if (c_solve->parsed()) cmd_solve(f_solve);
        if (c_stress->parsed()) cmd_stress(f_stress, stress_q4);
        if (c_q4->parsed()) cmd_q4(f_q4);
        if (c_table->parsed()) return cmd_table(table_id, f_table, table_q4);
        if (c_conv->parsed()) return cmd_converge(f_conv, meshes_arg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
