#include "CLI11.hpp"
#include "json.hpp"

#include "frobtau/expr.hpp"
#include "frobtau/frobenius.hpp"
#include "frobtau/genus.hpp"
#include "frobtau/hierarchy.hpp"
#include "frobtau/kdv.hpp"
#include "frobtau/poisson.hpp"
#include "frobtau/polytropic.hpp"
#include "frobtau/tau.hpp"
#include "frobtau/virasoro.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ft;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelArgs {
    std::string name = "kdv";
    std::string kappa;
    std::string file;
};

Scalar rational(const std::string& s) { return Scalar::rational(s); }

ScalarMatrix read_matrix(const json& j) {
    ScalarMatrix m;
    for (const auto& row : j) {
        std::vector<Scalar> r;
        for (const auto& x : row) r.push_back(rational(x.get<std::string>()));
        m.push_back(r);
    }
    return m;
}

FrobeniusModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open model file " + path);
    json j = json::parse(in);
    if (j.contains("builtin")) {
        std::optional<Scalar> k;
        if (j.contains("kappa")) k = rational(j["kappa"].get<std::string>());
        return builtin_model(j["builtin"].get<std::string>(), k);
    }
    for (const char* key : {"n", "eta", "potential", "euler", "charge", "mu"})
        if (!j.contains(key)) throw InvalidModel(std::string("model file lacks field '") + key + "'");
    int n = j["n"].get<int>();
    std::vector<JetPoly> euler;
    for (const auto& e : j["euler"]) euler.push_back(parse_expression(e.get<std::string>()));
    std::vector<Scalar> mu;
    for (const auto& x : j["mu"]) mu.push_back(rational(x.get<std::string>()));
    ScalarMatrix R = j.contains("R") ? read_matrix(j["R"]) : ScalarMatrix(n, std::vector<Scalar>(n));
    return make_model(n, read_matrix(j["eta"]), parse_expression(j["potential"].get<std::string>()), euler,
                      rational(j["charge"].get<std::string>()), mu, R, j.value("name", std::string("custom")));
}

FrobeniusModel load_model(const ModelArgs& a) {
    if (!a.file.empty()) return load_model_file(a.file);
    std::optional<Scalar> k;
    if (!a.kappa.empty()) k = rational(a.kappa);
    return builtin_model(a.name, k);
}

void add_model_options(CLI::App* cmd, ModelArgs& a) {
    cmd->add_option("--model", a.name, "builtin model: kdv, cp1, i2");
    cmd->add_option("--kappa", a.kappa, "I2 parameter");
    cmd->add_option("--model-file", a.file, "model definition document");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

// "p:alpha,p:alpha"; a bare p means alpha = 1
std::vector<TimeIndex> parse_insertions(const std::string& s) {
    std::vector<TimeIndex> out;
    for (const auto& item : split(s, ',')) {
        auto parts = split(item, ':');
        if (parts.empty() || parts.size() > 2) throw UsageError("bad insertion '" + item + "'");
        int p = std::stoi(parts[0]);
        int alpha = parts.size() == 2 ? std::stoi(parts[1]) : 1;
        out.push_back({alpha, p});
    }
    return out;
}

// "t0^3*t2" or "t[1,3]^2*t[2,0]"
std::vector<std::array<int, 3>> parse_monomial(const std::string& s) {
    std::map<TimeIndex, int> e;
    if (s != "1")
        for (const auto& f : split(s, '*')) {
            std::string base = f;
            int power = 1;
            if (auto c = f.find('^'); c != std::string::npos) {
                base = f.substr(0, c);
                power = std::stoi(f.substr(c + 1));
            }
            if (base.size() < 2 || base[0] != 't') throw UsageError("bad monomial factor '" + f + "'");
            TimeIndex t;
            if (base[1] == '[') {
                auto inner = split(base.substr(2, base.size() - 3), ',');
                if (inner.size() != 2 || base.back() != ']') throw UsageError("bad monomial factor '" + f + "'");
                t = {std::stoi(inner[0]), std::stoi(inner[1])};
            } else {
                t = {1, std::stoi(base.substr(1))};
            }
            e[t] += power;
        }
    std::vector<std::array<int, 3>> out;
    for (const auto& [t, k] : e) out.push_back({t.first, t.second, k});
    return out;
}

int mono_levels(const std::vector<std::array<int, 3>>& m) {
    int l = 0;
    for (const auto& f : m) l = std::max(l, f[1]);
    return l;
}

int mono_degree(const std::vector<std::array<int, 3>>& m) {
    int d = 0;
    for (const auto& f : m) d += f[2];
    return d;
}

json series_json(const TauSeries& s) {
    json j = json::object();
    for (const auto& [k, c] : s.sorted()) j[s.key_str(k)] = c.str();
    return j;
}

json poly_list(const std::vector<JetPoly>& v) {
    json j = json::array();
    for (const auto& p : v) j.push_back(p.str());
    return j;
}

KdvNorm parse_norm(const std::string& s) {
    if (s == "classical") return KdvNorm::Classical;
    if (s == "string") return KdvNorm::String;
    throw UsageError("normalization must be 'classical' or 'string'");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_residual(bool zero, const std::string& detail) {
    std::cout << "residual: " << (zero ? "0" : detail) << "\n";
}

bool all_zero(const std::vector<TauSeries>& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

LocalBivector bracket_fixture(const std::string& name, const FrobeniusModel& m, int member) {
    if (name == "delta") return fixtures::delta_prime(m.n, m.eta_inv);
    if (name == "magri") return kdv_magri(KdvNorm::String);
    if (name == "hydro") {
        auto pencil = hydrodynamic_pencil(m);
        return member == 1 ? pencil.first : pencil.second;
    }
    throw UsageError("unknown fixture '" + name + "' (delta, magri, hydro)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius manifolds, integrable hierarchies and their tau functions"};
    app.require_subcommand(1);
    ModelArgs model;
    int alpha = 1, p = 0, beta = 1, q = 0, levels = -1, degree = -1, genus = 0, k = 0, order = 4, member = 1;
    std::string norm, index, monomial, fixture = "delta", G, kappa_str, flow_a, flow_b;
    bool flat = false, generating = false;

    auto* cmd_model = app.add_subcommand("model", "validate a model and print its structure");
    add_model_options(cmd_model, model);

    auto* cmd_theta = app.add_subcommand("theta", "theta_{alpha,p}(v)");
    add_model_options(cmd_theta, model);
    cmd_theta->add_option("--alpha", alpha)->required();
    cmd_theta->add_option("--p", p)->required();

    auto* cmd_flow = app.add_subcommand("flow", "dv/dt^{alpha,p}");
    add_model_options(cmd_flow, model);
    cmd_flow->add_option("--alpha", alpha)->required();
    cmd_flow->add_option("--p", p)->required();

    auto* cmd_omega = app.add_subcommand("omega", "Omega_{alpha,p;beta,q}(v)");
    add_model_options(cmd_omega, model);
    cmd_omega->add_option("--alpha", alpha)->required();
    cmd_omega->add_option("--p", p)->required();
    cmd_omega->add_option("--beta", beta)->required();
    cmd_omega->add_option("--q", q)->required();

    auto* cmd_check = app.add_subcommand("check", "residual checks");
    cmd_check->require_subcommand(1);
    auto* ck_jacobi = cmd_check->add_subcommand("jacobi", "Schouten self-bracket of a Poisson bracket");
    auto* ck_compat = cmd_check->add_subcommand("compat", "compatibility of a pencil");
    auto* ck_commute = cmd_check->add_subcommand("commute", "commutativity of two principal flows");
    auto* ck_recursion = cmd_check->add_subcommand("recursion", "bihamiltonian recursion at level p");
    auto* ck_trr0 = cmd_check->add_subcommand("trr0", "genus-zero recursion on the topological solution");
    auto* ck_trr1 = cmd_check->add_subcommand("trr1", "genus-one recursion on the topological solution");
    auto* ck_getzler = cmd_check->add_subcommand("getzler", "Getzler identity for a genus-one function G(v)");
    auto* ck_tausym = cmd_check->add_subcommand("tau-symmetry", "tau symmetry of two flows");
    auto* ck_vir = cmd_check->add_subcommand("virasoro", "Virasoro constraints on the topological tau function");
    for (auto* c : {ck_jacobi, ck_compat, ck_commute, ck_recursion, ck_trr0, ck_trr1, ck_getzler, ck_tausym, ck_vir})
        add_model_options(c, model);
    ck_jacobi->add_option("--fixture", fixture, "delta, magri, hydro");
    ck_jacobi->add_option("--member", member, "pencil member for hydro (1 or 2)");
    ck_compat->add_option("--fixture", fixture, "magri (delta' with the Magri bracket) or hydro");
    ck_commute->add_option("--a", flow_a, "alpha:p")->required();
    ck_commute->add_option("--b", flow_b, "alpha:p")->required();
    ck_recursion->add_option("--p", p)->required();
    for (auto* c : {ck_trr0, ck_trr1}) {
        c->add_option("--levels", levels)->required();
        c->add_option("--degree", degree)->required();
    }
    ck_getzler->add_option("--G", G, "expression in v")->required();
    ck_tausym->add_option("--a", flow_a, "alpha:p")->required();
    ck_tausym->add_option("--b", flow_b, "alpha:p")->required();
    ck_tausym->add_option("--norm", norm, "kdv suite normalization (classical|string); principal hierarchy otherwise");
    ck_vir->add_option("--m", k)->required();
    ck_vir->add_option("--levels", levels)->required();
    ck_vir->add_option("--degree", degree)->required();
    ck_vir->add_option("--genus", genus)->required();

    auto* cmd_tau0 = app.add_subcommand("tau0", "genus-zero free energy on the topological solution");
    add_model_options(cmd_tau0, model);
    cmd_tau0->add_option("--levels", levels)->required();
    cmd_tau0->add_option("--degree", degree)->required();

    auto* cmd_genus = app.add_subcommand("genus", "genus-g jet function, optionally on the topological solution");
    add_model_options(cmd_genus, model);
    cmd_genus->add_option("--g", genus)->required();
    cmd_genus->add_option("--levels", levels);
    cmd_genus->add_option("--degree", degree);
    cmd_genus->add_flag("--flat", flat, "KdV: rewrite in v jets");

    auto* cmd_gw = app.add_subcommand("gw", "correlator <tau_p1(phi_a1) ...>_g");
    add_model_options(cmd_gw, model);
    cmd_gw->add_option("--genus", genus)->required();
    cmd_gw->add_option("--index", index, "p:alpha list")->required();

    auto* cmd_wk = app.add_subcommand("wk", "Witten-Kontsevich free energies");
    cmd_wk->add_option("--genus", genus)->required();
    cmd_wk->add_option("--monomial", monomial, "e.g. t0^3*t2");
    cmd_wk->add_option("--levels", levels);
    cmd_wk->add_option("--degree", degree);

    auto* cmd_kdv = app.add_subcommand("kdv", "KdV suite");
    cmd_kdv->require_subcommand(1);
    auto* kdv_chi = cmd_kdv->add_subcommand("chi", "Riccati coefficients chi_1..chi_m");
    kdv_chi->add_option("--max", k)->required();
    auto* kdv_ham = cmd_kdv->add_subcommand("ham", "hamiltonian density h_k");
    kdv_ham->add_option("--k", k)->required();
    kdv_ham->add_option("--norm", norm)->required();
    kdv_ham->add_flag("--generating", generating, "read off the generating function");
    auto* kdv_flowc = cmd_kdv->add_subcommand("flow", "flow u_{t^k}");
    kdv_flowc->add_option("--k", k)->required();
    kdv_flowc->add_option("--norm", norm)->required();
    auto* kdv_qm = cmd_kdv->add_subcommand("qm", "quasi-Miura map v -> u");
    kdv_qm->add_option("--order", order)->required();
    kdv_qm->add_option("--norm", norm)->required();
    auto* kdv_loop = cmd_kdv->add_subcommand("loop", "loop equation residual");
    std::string log_coeff = "1/24", kappa0_str = "1/16", f2;
    bool no_f2 = false;
    kdv_loop->add_option("--order", order, "epsilon order (0 or 2)")->required();
    kdv_loop->add_option("--log-coeff", log_coeff);
    kdv_loop->add_option("--kappa0", kappa0_str);
    kdv_loop->add_option("--F2", f2, "expression in v jets");
    kdv_loop->add_flag("--no-F2", no_f2);

    auto* cmd_poly = app.add_subcommand("polytropic", "eps^4 deformation of the polytropic system");
    cmd_poly->add_option("--kappa", kappa_str);

    auto* cmd_wp = app.add_subcommand("wp-series", "genus map applied to the Bessel seed");
    cmd_wp->add_option("--degree", degree)->required();

    auto* cmd_vir = app.add_subcommand("virasoro", "Virasoro operators");
    cmd_vir->require_subcommand(1);
    auto* vir_op = cmd_vir->add_subcommand("op", "operator coefficients");
    auto* vir_comm = cmd_vir->add_subcommand("comm", "[L_i, L_j] on monomials");
    auto* vir_check = cmd_vir->add_subcommand("check", "constraints on the topological tau function");
    for (auto* c : {vir_op, vir_comm, vir_check}) add_model_options(c, model);
    vir_op->add_option("--m", k)->required();
    vir_op->add_option("--levels", levels)->required();
    vir_comm->add_option("--i", p)->required();
    vir_comm->add_option("--j", q)->required();
    vir_comm->add_option("--degree", degree)->required();
    vir_comm->add_option("--levels", levels)->required();
    vir_check->add_option("--m", k)->required();
    vir_check->add_option("--levels", levels)->required();
    vir_check->add_option("--degree", degree)->required();
    vir_check->add_option("--genus", genus)->required();

    CLI11_PARSE(app, argc, argv);

    auto flow_index = [](const std::string& s) {
        auto parts = split(s, ':');
        if (parts.size() != 2) throw UsageError("flow index must be alpha:p");
        return TimeIndex{std::stoi(parts[0]), std::stoi(parts[1])};
    };

    auto virasoro_check = [&](const FrobeniusModel& m) {
        ThetaTable t(m);
        auto s = topological_solution(t, levels, degree);
        auto F = full_tau_log(t, s, genus);
        auto R = constraint_residual(m, k, F, {{{1, 1}, Scalar(1)}});
        json fails = json::array();
        for (auto [g, key] : R.failures())
            fails.push_back({{"genus", g}, {"monomial", R.by_genus[g].key_str(key)},
                             {"value", R.by_genus[g].coeff(key).str()}});
        emit_residual(fails.empty(), fails.dump());
    };

    try {
        if (*cmd_model) {
            auto m = load_model(model);
            auto rep = validate_model(m);
            auto c = structure_constants(m);
            auto form = intersection_form(m);
            json j;
            j["name"] = m.name;
            j["n"] = m.n;
            j["valid"] = rep.ok();
            j["associativity"] = poly_list(rep.associativity);
            j["unity"] = poly_list(rep.unity);
            j["quasihomogeneity"] = rep.quasihomogeneity.str();
            json cj = json::object(), gj = json::object();
            for (int a = 0; a < m.n; ++a)
                for (int b = 0; b < m.n; ++b) {
                    for (int g = 0; g < m.n; ++g)
                        if (!c[a][b][g].is_zero())
                            cj["c[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]^" + std::to_string(g + 1)] =
                                c[a][b][g].str();
                    gj["g^" + std::to_string(a + 1) + std::to_string(b + 1)] = form.g[a][b].str();
                }
            j["structure_constants"] = cj;
            j["intersection_form"] = gj;
            j["kappa0"] = kappa0(m).str();
            emit(j);
        } else if (*cmd_theta) {
            ThetaTable t(load_model(model));
            std::cout << t.theta(alpha, p).str() << "\n";
        } else if (*cmd_flow) {
            ThetaTable t(load_model(model));
            emit(poly_list(flow_rhs(t, alpha, p)));
        } else if (*cmd_omega) {
            ThetaTable t(load_model(model));
            std::cout << omega(t, alpha, p, beta, q).str() << "\n";
        } else if (*cmd_check) {
            auto m = load_model(model);
            if (*ck_jacobi) {
                auto r = jacobi_residual(bracket_fixture(fixture, m, member));
                emit_residual(r.is_zero(), r.str());
            } else if (*ck_compat) {
                LocalTrivector r;
                if (fixture == "magri") {
                    r = compatibility_residual(fixtures::delta_prime(1, {{Scalar(1)}}), kdv_magri(KdvNorm::String));
                } else {
                    auto pencil = hydrodynamic_pencil(m);
                    r = compatibility_residual(pencil.first, pencil.second);
                }
                emit_residual(r.is_zero(), r.str());
            } else if (*ck_commute) {
                ThetaTable t(m);
                auto r = check_flow_commutativity(t, flow_index(flow_a), flow_index(flow_b));
                bool z = std::all_of(r.begin(), r.end(), [](const JetPoly& x) { return x.is_zero(); });
                emit_residual(z, poly_list(r).dump());
            } else if (*ck_recursion) {
                ThetaTable t(m);
                try {
                    auto r = check_bihamiltonian_recursion(t, p);
                    bool z = true;
                    json j = json::array();
                    for (const auto& row : r) {
                        j.push_back(poly_list(row));
                        for (const auto& x : row) z = z && x.is_zero();
                    }
                    emit_residual(z, j.dump());
                } catch (const Degenerate& e) {
                    std::cout << "Degenerate: " << e.what() << "\n";
                }
            } else if (*ck_trr0 || *ck_trr1) {
                ThetaTable t(m);
                auto s = topological_solution(t, levels, degree + 3);
                auto F = full_tau_log(t, s, *ck_trr1 ? 1 : 0);
                auto r = *ck_trr1 ? trr1_residuals(m, F[0], F[1], degree) : trr0_residuals(m, F[0], degree);
                std::string detail;
                for (const auto& x : r)
                    if (!x.is_zero()) detail += x.str() + "\n";
                emit_residual(all_zero(r), detail);
            } else if (*ck_getzler) {
                auto r = getzler_residual(m, parse_expression(G));
                emit_residual(r.is_zero(), r.str());
            } else if (*ck_tausym) {
                auto a = flow_index(flow_a), b = flow_index(flow_b);
                JetPoly r;
                if (!norm.empty()) {
                    r = kdv_tau_symmetry_residual(a.second, b.second, parse_norm(norm));
                } else {
                    ThetaTable t(m);
                    r = tau_symmetry_residual(t, a.first, a.second, b.first, b.second);
                }
                emit_residual(r.is_zero(), r.str());
            } else if (*ck_vir) {
                virasoro_check(m);
            }
        } else if (*cmd_tau0) {
            ThetaTable t(load_model(model));
            auto s = topological_solution(t, levels, degree);
            emit(series_json(genus0_free_energy(t, s)));
        } else if (*cmd_genus) {
            auto m = load_model(model);
            if (genus < 1 || genus > 2) throw UsageError("genus must be 1 or 2");
            auto f = genus == 1 ? genus1(m) : genus2(m);
            if (levels < 0) {
                if (flat) std::cout << to_flat_jets(f.expr).str() << "\n";
                else std::cout << f.str() << "\n";
            } else {
                if (degree < 0) throw UsageError("--levels needs --degree");
                ThetaTable t(m);
                auto s = topological_solution(t, levels, degree + (genus == 2 ? 4 : 1));
                GenusEvaluator ge(s);
                emit(series_json(ge.eval(f).with_degree(degree)));
            }
        } else if (*cmd_gw) {
            ThetaTable t(load_model(model));
            std::cout << gw_invariant(t, genus, parse_insertions(index)).str() << "\n";
        } else if (*cmd_wk) {
            ThetaTable t(make_kdv());
            if (!monomial.empty()) {
                auto mono = parse_monomial(monomial);
                std::vector<TimeIndex> ins;
                mpz_class fact = 1;
                for (const auto& f : mono) {
                    for (int r = 0; r < f[2]; ++r) ins.push_back({f[0], f[1]});
                    for (int r = 2; r <= f[2]; ++r) fact *= r;
                }
                Scalar v = ins.empty() ? Scalar() : gw_invariant(t, genus, ins) * Scalar(mpq_class(1, fact));
                std::cout << v.str() << "\n";
            } else {
                if (levels < 0 || degree < 0) throw UsageError("wk without --monomial needs --levels and --degree");
                auto s = topological_solution(t, levels, degree + (genus == 2 ? 4 : genus));
                auto F = full_tau_log(t, s, genus);
                emit(series_json(F[genus].with_degree(degree)));
            }
        } else if (*cmd_kdv) {
            if (*kdv_chi) {
                auto chi = riccati_chi(k);
                json j = json::object();
                for (int m = 1; m <= k; ++m) j["chi_" + std::to_string(m)] = chi[m].str();
                emit(j);
            } else if (*kdv_ham) {
                auto n = parse_norm(norm);
                std::cout << (generating ? kdv_hamiltonian_density_generating(k, n) : kdv_hamiltonian_density(k, n)).str()
                          << "\n";
            } else if (*kdv_flowc) {
                std::cout << kdv_flow(k, parse_norm(norm)).str() << "\n";
            } else if (*kdv_qm) {
                std::cout << kdv_quasimiura(order, parse_norm(norm)).F[0].str() << "\n";
            } else if (*kdv_loop) {
                auto a = kdv_loop_solution();
                a.log_coeff = rational(log_coeff);
                a.kappa0 = rational(kappa0_str);
                if (no_f2) a.F.clear();
                else if (!f2.empty()) a.F = {parse_expression(f2)};
                auto r = kdv_loop_residual(a, order);
                if (r.is_zero()) std::cout << "residual: 0\n";
                else std::cout << "residual:\n" << r.str();
            }
        } else if (*cmd_poly) {
            json j;
            json ta = json::object(), tb = json::object();
            for (const auto& c : polytropic_a()) ta[c.name] = c.str();
            for (const auto& c : polytropic_b()) tb[c.name] = c.str();
            j["a"] = ta;
            j["b"] = tb;
            if (!kappa_str.empty()) {
                auto s = polytropic_deformation(rational(kappa_str));
                j["kappa"] = s.kappa.str();
                j["flux"] = poly_list(s.flux);
                if (s.kappa == Scalar(2)) j["coupling_eps2"] = poly_list(polytropic_coupling(s, 2));
            }
            emit(j);
        } else if (*cmd_wp) {
            auto w = wp_series(degree);
            json j;
            for (int e = 0; e < static_cast<int>(w.size()); ++e) j["eps^" + std::to_string(2 * e)] = series_json(w[e]);
            emit(j);
        } else if (*cmd_vir) {
            auto m = load_model(model);
            if (*vir_op) {
                std::cout << virasoro_operator(m, k, levels).str() << "\n";
            } else if (*vir_comm) {
                auto r = commutator_check(m, p, q, degree, levels);
                json j;
                j["monomials"] = r.monomials;
                j["failures"] = r.failures;
                j["examples"] = r.examples;
                emit(j);
            } else if (*vir_check) {
                virasoro_check(m);
            }
        }
    } catch (const ParseError& e) {
        emit({{"error", e.kind == ParseError::Kind::Syntax ? "SyntaxError" : "UnknownGenerator"},
              {"line", e.line},
              {"column", e.column},
              {"message", e.what()}});
        return 2;
    } catch (const UsageError& e) {
        emit({{"error", "UsageError"}, {"message", e.what()}});
        return 2;
    } catch (const UnsupportedModel& e) {
        emit({{"error", "UnsupportedModel"}, {"message", e.what()}});
        return 2;
    } catch (const InvalidModel& e) {
        emit({{"error", "InvalidModel"}, {"message", e.what()}});
        return 2;
    } catch (const std::exception& e) {
        emit({{"error", "Failure"}, {"message", e.what()}});
        return 1;
    }
    return 0;
}
