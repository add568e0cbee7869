#include "fgbeam/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fgbeam {

MaterialLaw ScenarioConfig::default_law(GradingType kind, double p) {
    MaterialLaw law;
    law.kind = kind;
    law.p = p;
    if (kind == GradingType::TypeA) {
        law.h0 = -100.0;
        law.h1 = 100.0;
    } else {
        law.h0 = -100.0;
        law.h1 = -40.0;
        law.h2 = 40.0;
        law.h3 = 100.0;
    }
    return law;
}

BeamModel ScenarioConfig::beam_model() const {
    BeamModel m;
    m.geometry = geometry;
    m.law = law;
    m.n_elements = n_elements;
    m.kind = kind;
    m.bc = bc;
    m.bc_opts = bc_opts;
    m.load = LoadCase::uniform(q, geometry.L);
    m.load.nodal = nodal;
    return m;
}

Q4Model ScenarioConfig::q4_model() const {
    Q4Model m;
    m.mx = q4_mx;
    m.my = q4_my;
    m.geometry = geometry;
    m.law = law;
    m.bc = bc;
    m.q = q;
    m.path = q4_path;
    m.support = q4_support;
    return m;
}

ElementKind parse_element_kind(const std::string& s) {
    if (s == "cf" || s == "CF" || s == "mixed_cf") return ElementKind::MixedCF;
    if (s == "c" || s == "C" || s == "mixed_c") return ElementKind::MixedC;
    if (s == "dts" || s == "DTS" || s == "displacement") return ElementKind::DisplacementDTS;
    throw std::invalid_argument("unknown element kind '" + s + "' (use cf|c|dts)");
}

BoundaryKind parse_boundary_kind(const std::string& s) {
    if (s == "ss" || s == "SS") return BoundaryKind::SimplySupported;
    if (s == "cc" || s == "CC") return BoundaryKind::ClampedClamped;
    throw std::invalid_argument("unknown boundary kind '" + s + "' (use ss|cc)");
}

const char* element_kind_name(ElementKind k) {
    switch (k) {
        case ElementKind::MixedCF: return "cf";
        case ElementKind::MixedC: return "c";
        case ElementKind::DisplacementDTS: return "dts";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_numbers(const std::string& s) {
    std::vector<double> out;
    std::istringstream iss(s);
    double v;
    while (iss >> v) out.push_back(v);
    return out;
}

struct KeyValue {
    std::string block;
    std::string key;
    std::string value;
    int line;
};

} // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    std::vector<KeyValue> entries;
    {
        std::istringstream iss(text);
        std::string line, block;
        int line_no = 0;
        while (std::getline(iss, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                                ": malformed block header");
                block = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": expected key = value");
            entries.push_back({block, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
        }
    }

    ScenarioConfig cfg;
    std::optional<GradingType> kind;
    std::optional<std::vector<double>> boundaries;

    auto bad = [](const KeyValue& kv, const std::string& why) {
        throw std::invalid_argument("config line " + std::to_string(kv.line) + " [" + kv.block +
                                    "] " + kv.key + ": " + why);
    };
    auto as_double = [&](const KeyValue& kv) {
        try {
            std::size_t pos;
            double v = std::stod(kv.value, &pos);
            if (pos != kv.value.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            bad(kv, "not a number: '" + kv.value + "'");
            return 0.0;
        }
    };
    auto as_int = [&](const KeyValue& kv) {
        double v = as_double(kv);
        if (v != static_cast<int>(v)) bad(kv, "expected an integer");
        return static_cast<int>(v);
    };
    auto as_bool = [&](const KeyValue& kv) {
        if (kv.value == "true" || kv.value == "1") return true;
        if (kv.value == "false" || kv.value == "0") return false;
        bad(kv, "expected true|false");
        return false;
    };

    for (const auto& kv : entries) {
        if (kv.block == "material") {
            if (kv.key == "kind") {
                if (kv.value == "A" || kv.value == "a") kind = GradingType::TypeA;
                else if (kv.value == "B" || kv.value == "b") kind = GradingType::TypeB;
                else if (kv.value == "C" || kv.value == "c") kind = GradingType::TypeC;
                else bad(kv, "expected A|B|C");
            } else if (kv.key == "p") cfg.law.p = as_double(kv);
            else if (kv.key == "E_m") cfg.law.E_m = as_double(kv);
            else if (kv.key == "E_c") cfg.law.E_c = as_double(kv);
            else if (kv.key == "nu") cfg.law.nu = as_double(kv);
            else if (kv.key == "boundaries") boundaries = parse_numbers(kv.value);
            else bad(kv, "unknown key");
        } else if (kv.block == "geometry") {
            if (kv.key == "b") cfg.geometry.b = as_double(kv);
            else if (kv.key == "h") cfg.geometry.h = as_double(kv);
            else if (kv.key == "L") cfg.geometry.L = as_double(kv);
            else bad(kv, "unknown key");
        } else if (kv.block == "model") {
            if (kv.key == "bc") cfg.bc = parse_boundary_kind(kv.value);
            else if (kv.key == "element") cfg.kind = parse_element_kind(kv.value);
            else if (kv.key == "n_elements") cfg.n_elements = as_int(kv);
            else if (kv.key == "ss_fix_phi") cfg.bc_opts.ss_fix_phi = as_bool(kv);
            else if (kv.key == "cc_clamp_derivatives") cfg.bc_opts.cc_clamp_derivatives = as_bool(kv);
            else bad(kv, "unknown key");
        } else if (kv.block == "load") {
            if (kv.key == "q") cfg.q = as_double(kv);
            else if (kv.key == "nodal") {
                // "node:P" pairs, whitespace separated
                std::istringstream iss(kv.value);
                std::string tok;
                while (iss >> tok) {
                    const auto colon = tok.find(':');
                    if (colon == std::string::npos) bad(kv, "expected node:P pairs");
                    cfg.nodal.push_back(
                        {std::stoi(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))});
                }
            } else bad(kv, "unknown key");
        } else if (kv.block == "output") {
            if (kv.key == "stations") cfg.stations = parse_numbers(kv.value);
            else if (kv.key == "y_points") cfg.y_points = as_int(kv);
            else if (kv.key == "standardize") {
                if (kv.value == "none") cfg.standardize.reset();
                else if (kv.value == "by_max_abs") cfg.standardize = StandardizeMode::ByMaxAbs;
                else if (kv.value == "by_analytical") cfg.standardize = StandardizeMode::ByAnalytical;
                else bad(kv, "expected none|by_max_abs|by_analytical");
            } else if (kv.key == "fd_derivatives") cfg.fd_derivatives = as_bool(kv);
            else bad(kv, "unknown key");
        } else if (kv.block == "section") {
            if (kv.key == "n_sub") cfg.section.n_sub = as_int(kv);
            else if (kv.key == "gauss_order") cfg.section.gauss_order = as_int(kv);
            else if (kv.key == "variational_half_factor")
                cfg.section.variational_half_factor = as_bool(kv);
            else if (kv.key == "positive_s12") cfg.section.positive_s12 = as_bool(kv);
            else bad(kv, "unknown key");
        } else if (kv.block == "q4") {
            if (kv.key == "mx") cfg.q4_mx = as_int(kv);
            else if (kv.key == "my") cfg.q4_my = as_int(kv);
            else if (kv.key == "path") {
                if (kv.value == "direct") cfg.q4_path = Q4Model::Path::Direct;
                else if (kv.value == "cg") cfg.q4_path = Q4Model::Path::ConjugateGradient;
                else bad(kv, "expected direct|cg");
            } else if (kv.key == "support") {
                if (kv.value == "full_edge") cfg.q4_support = Q4Model::Support::FullEdge;
                else if (kv.value == "axis_point") cfg.q4_support = Q4Model::Support::AxisPoint;
                else if (kv.value == "bottom_corner") cfg.q4_support = Q4Model::Support::BottomCorner;
                else bad(kv, "expected full_edge|axis_point|bottom_corner");
            } else bad(kv, "unknown key");
        } else {
            bad(kv, "unknown block '" + kv.block + "'");
        }
    }

    if (kind) {
        const double p = cfg.law.p;
        const double em = cfg.law.E_m, ec = cfg.law.E_c, nu = cfg.law.nu;
        cfg.law = ScenarioConfig::default_law(*kind, p);
        cfg.law.E_m = em;
        cfg.law.E_c = ec;
        cfg.law.nu = nu;
    }
    if (boundaries) {
        const auto& b = *boundaries;
        if (cfg.law.kind == GradingType::TypeA) {
            if (b.size() != 2)
                throw std::invalid_argument("config: TypeA expects 2 boundary values");
            cfg.law.h0 = b[0];
            cfg.law.h1 = b[1];
        } else {
            if (b.size() != 4)
                throw std::invalid_argument("config: TypeB/C expect 4 boundary values");
            cfg.law.h0 = b[0];
            cfg.law.h1 = b[1];
            cfg.law.h2 = b[2];
            cfg.law.h3 = b[3];
        }
    }
    cfg.law.validate();
    cfg.geometry.validate();
    return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

} // namespace fgbeam
