// Command-line front end: roundness analysis, bound-witness extraction, flux
// reconstruction, polytope generation, and mesh regularity audits.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polyround/polyround.hpp"

namespace {

using polyround::io::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw polyround::ValidationError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw polyround::ValidationError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw polyround::ValidationError("cannot write " + path);
    out << content;
}

// Load, require boundedness, and strip redundant rows; the bound and its
// witness are defined on the irredundant facet system.
polyround::HPolytope load_checked(const json& doc) {
    polyround::HPolytope p = polyround::io::load_polytope(doc);
    if (!polyround::is_bounded(p))
        throw polyround::ValidationError("input polytope is unbounded");
    return p;
}

int run_analyze(const std::string& input, bool keep_redundant) {
    const polyround::HPolytope raw = load_checked(read_json_file(input));
    const polyround::HPolytope p = polyround::remove_redundant(raw);
    json out = polyround::io::report_json(polyround::analyze(p));
    if (keep_redundant) {
        const polyround::SvdResult s = polyround::svd(raw.normals);
        json rawj;
        rawj["num_constraints"] = raw.num_constraints();
        rawj["singular_values"] = polyround::io::detail::vector_json(s.singular_values);
        rawj["sigma_min"] = s.sigma_min();
        out["raw"] = rawj;
    }
    std::cout << polyround::io::dump(out);
    return 0;
}

int run_witness(const std::string& input) {
    const polyround::HPolytope p = polyround::remove_redundant(load_checked(read_json_file(input)));
    const polyround::RoundnessReport rep = polyround::analyze(p);
    const polyround::BoundWitness w = polyround::extract_witness(p);

    json out = polyround::io::report_json(rep);
    out["witness"] = polyround::io::witness_json(w);
    std::cout << polyround::io::dump(out);

    char line[160];
    std::snprintf(line, sizeof(line), "chain: %.17g > %.17g > %.17g\n", w.lhs_chain, w.mid_chain,
                  w.rhs_chain);
    std::cout << line;
    bool all_pass = true;
    for (const auto& c : polyround::chain_checks(w)) {
        all_pass = all_pass && c.pass;
        std::snprintf(line, sizeof(line), "%s %s (%.17g vs %.17g)\n", c.pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.lhs, c.rhs);
        std::cout << line;
    }
    return all_pass ? 0 : 3;
}

int run_reconstruct(const std::string& input) {
    const json doc = read_json_file(input);
    if (!doc.contains("polytope") || !doc.contains("field"))
        throw polyround::ValidationError("flux document needs \"polytope\" and \"field\"");
    const polyround::HPolytope p = polyround::remove_redundant(load_checked(doc["polytope"]));
    const polyround::FieldSpec field = polyround::io::load_field(doc["field"], p.dim());
    const polyround::FluxData data = polyround::facet_flux(p, field);
    const polyround::ReconstructionResult res = polyround::reconstruct(p, data);
    std::cout << polyround::io::dump(polyround::io::reconstruction_json(data, res));
    return 0;
}

int run_generate(const std::string& family_name, int dim, std::uint64_t seed, int m,
                 double epsilon, bool epsilon_given, const std::string& out_path) {
    const auto family = polyround::family_from_name(family_name);
    if (!family)
        throw polyround::ValidationError("unknown family \"" + family_name + "\"");
    polyround::GeneratorSpec spec;
    spec.family = *family;
    spec.dim = dim;
    spec.seed = seed;
    spec.num_facets = m;
    if (epsilon_given) {
        spec.epsilon = epsilon;
        spec.noise = epsilon;  // --epsilon doubles as the perturbation amplitude
    }
    const polyround::HPolytope p = polyround::generate(spec);
    write_file(out_path, polyround::io::dump(polyround::io::polytope_json(p)));
    std::cerr << "wrote " << out_path << " (" << p.num_constraints() << " facets, dim "
              << p.dim() << ")\n";
    return 0;
}

int run_audit(const std::string& mesh_path, double sigma_bar, double diameter_cap,
              const std::string& format, bool strict) {
    const auto cells = polyround::io::load_mesh(read_json_file(mesh_path));
    polyround::AuditConfig config;
    config.sigma_bar = sigma_bar;
    config.diameter_cap = diameter_cap;
    const polyround::MeshAuditReport rep = polyround::audit_mesh(cells, config);
    if (format == "csv")
        std::cout << polyround::io::audit_csv(rep);
    else
        std::cout << polyround::io::dump(polyround::io::audit_json(rep));
    return (strict && rep.num_irregular > 0) ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"roundness metrics, singular-value bound checks, and flux "
                 "reconstruction for convex polytopes in H-representation"};
    app.require_subcommand(1);

    std::string input, out_path, mesh_path;
    bool keep_redundant = false, strict = false;
    std::string family_name = "cube", format = "json";
    int dim = 2, num_facets = 0;
    std::uint64_t seed = 0;
    double epsilon = 1e-3, sigma_bar = 4.0, diameter_cap = 1.0;

    auto* analyze_cmd = app.add_subcommand("analyze", "roundness report for one polytope");
    analyze_cmd->add_option("--input", input, "polytope JSON file")->required();
    analyze_cmd->add_flag("--keep-redundant", keep_redundant,
                          "also report the spectrum of the raw constraint matrix");

    auto* witness_cmd =
        app.add_subcommand("witness", "bound witness with one PASS/FAIL line per inequality");
    witness_cmd->add_option("--input", input, "polytope JSON file")->required();

    auto* reconstruct_cmd =
        app.add_subcommand("reconstruct", "recover the constant field from facet fluxes");
    reconstruct_cmd->add_option("--input", input, "flux problem JSON file")->required();

    auto* generate_cmd = app.add_subcommand("generate", "write a polytope from a seeded family");
    generate_cmd
        ->add_option("--family", family_name,
                     "cube | simplex | slab | tangent-ball | rotated-cube | perturbed-simplex")
        ->required();
    generate_cmd->add_option("--dim", dim, "ambient dimension")->required();
    generate_cmd->add_option("--seed", seed, "PRNG seed")->required();
    generate_cmd->add_option("--m", num_facets, "facet count (tangent-ball)");
    auto* eps_opt = generate_cmd->add_option(
        "--epsilon", epsilon, "slab half-thickness / perturbation amplitude");
    generate_cmd->add_option("--out", out_path, "output polytope JSON file")->required();

    auto* audit_cmd = app.add_subcommand("audit", "inscribed-ball regularity audit of a mesh");
    audit_cmd->add_option("--mesh", mesh_path, "mesh JSON file")->required();
    audit_cmd->add_option("--sigma-bar", sigma_bar, "max allowed diam/inrad")->required();
    audit_cmd->add_option("--diameter-cap", diameter_cap, "max allowed cell diameter");
    audit_cmd->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    audit_cmd->add_flag("--strict", strict, "exit 4 when any cell is irregular");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze_cmd->parsed()) return run_analyze(input, keep_redundant);
        if (witness_cmd->parsed()) return run_witness(input);
        if (reconstruct_cmd->parsed()) return run_reconstruct(input);
        if (generate_cmd->parsed())
            return run_generate(family_name, dim, seed, num_facets, epsilon,
                                eps_opt->count() > 0, out_path);
        if (audit_cmd->parsed())
            return run_audit(mesh_path, sigma_bar, diameter_cap, format, strict);
    } catch (const polyround::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
