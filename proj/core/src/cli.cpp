#include "reeb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "reeb/calculus.hpp"
#include "reeb/catalog.hpp"
#include "reeb/errors.hpp"
#include "reeb/oracle.hpp"

namespace reeb {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : Error {
    using Error::Error;
};

std::vector<CoefficientRing> resolve_rings(const CommandInvocation& inv, std::vector<CoefficientRing> fallback) {
    if (inv.rings.empty()) {
        if (!inv.primes.empty()) throw UsageError("--p given without --ring Zp");
        return fallback;
    }
    std::vector<CoefficientRing> out;
    std::size_t next_prime = 0;
    for (const auto& name : inv.rings) {
        std::optional<std::int64_t> p;
        if (name == "Zp") {
            if (next_prime >= inv.primes.size()) throw UsageError("ring Zp needs a matching --p PRIME");
            p = inv.primes[next_prime++];
        }
        try {
            out.push_back(parse_ring(name, p));
        } catch (const PreconditionError& e) {
            throw UsageError(e.what());
        }
    }
    if (next_prime != inv.primes.size()) throw UsageError("more --p values than Zp rings");
    return out;
}

ReebDescriptor need_descriptor(const CommandInvocation& inv) {
    if (!inv.descriptor) throw UsageError(inv.command + " needs -d/--descriptor PATH");
    return load_descriptor(*inv.descriptor);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
    if (!f) throw IoError("cannot write '" + path + "'");
}

std::string ranks_text(const std::vector<std::size_t>& ranks) {
    std::string s = "(";
    for (std::size_t i = 0; i < ranks.size(); ++i) s += (i ? "," : "") + std::to_string(ranks[i]);
    return s + ")";
}

json module_json(const GradedModule& m) {
    json a = json::array();
    for (const auto& piece : m.pieces()) {
        json t = json::array();
        for (const auto& d : piece.torsion) t.push_back(d.str());
        a.push_back({{"rank", piece.free_rank}, {"torsion", t}});
    }
    return a;
}

std::string vector_text(const SparseVector& v, const PresentedGradedRing& r) { return to_string(v, r); }

int cmd_validate(const CommandInvocation& inv, std::ostream& out) {
    auto d = need_descriptor(inv);
    auto problems = validate(d);
    if (inv.json) {
        json j{{"valid", problems.empty()}, {"violations", problems}};
        write_file(*inv.json, j.dump(2));
    }
    if (problems.empty()) {
        out << "valid: " << summary(d) << "\n";
        return exit_ok;
    }
    out << "invalid: " << problems.size() << " violation(s)\n";
    for (const auto& p : problems) out << "  " << p << "\n";
    return exit_failure;
}

int cmd_homology(const CommandInvocation& inv, std::ostream& out) {
    auto d = need_descriptor(inv);
    auto rings = resolve_rings(inv, {CoefficientRing::integers()});
    require_valid(d);
    json all = json::array();
    for (const auto& ring : rings) {
        auto h = homology_of_descriptor(d, ring);
        out << "homology over " << ring.name() << ": " << summary(d) << "\n";
        out << "  k  H_k\n";
        for (int k = 0; k <= h.max_degree(); ++k) out << "  " << k << "  " << to_string(h.piece(k), ring) << "\n";
        out << "ranks " << ranks_text(h.ranks()) << "\n";
        all.push_back({{"ring", ring.name()}, {"homology", module_json(h)}});
    }
    if (inv.json) write_file(*inv.json, json{{"descriptor", json::parse(serialize_descriptor(d))}, {"results", all}}.dump(2));
    return exit_ok;
}

int cmd_ring(const CommandInvocation& inv, std::ostream& out) {
    auto d = need_descriptor(inv);
    auto rings = resolve_rings(inv, {CoefficientRing::integers()});
    require_valid(d);
    json all = json::array();
    for (const auto& ring : rings) {
        auto rep = cohomology_ring_of_descriptor(d, ring);
        const auto& r = rep.ring;
        out << "cohomology ring over " << ring.name() << ": " << summary(d) << "\n";
        out << "ranks " << ranks_text(r.ranks()) << "\n";
        json basis = json::array(), products = json::array(), pairings = json::array();
        for (const auto& e : r.basis()) {
            out << "  " << e.id << "  deg " << e.degree << "  " << to_string(e.provenance)
                << (e.sphere_representable ? "  sphere" : "") << "\n";
            basis.push_back({{"id", e.id},
                             {"degree", e.degree},
                             {"provenance", to_string(e.provenance)},
                             {"sphere_representable", e.sphere_representable}});
        }
        for (const auto& [ab, v] : r.product_table()) {
            if (ab.first > ab.second || v.empty()) continue;
            std::string lhs = r.basis()[ab.first].id + " * " + r.basis()[ab.second].id;
            out << "  " << lhs << " = " << vector_text(v, r) << "\n";
            products.push_back({{"a", r.basis()[ab.first].id}, {"b", r.basis()[ab.second].id}, {"value", vector_text(v, r)}});
        }
        for (int p = 1; p <= d.n; ++p)
            for (int q = p; p + q <= d.n; ++q) {
                auto inv_pq = pairing_invariants(r, p, q);
                out << "  pairing " << inv_pq.describe() << "\n";
                pairings.push_back({{"p", p}, {"q", q}, {"invariant", inv_pq.describe()}});
            }
        all.push_back({{"ring", ring.name()}, {"ranks", r.ranks()}, {"basis", basis}, {"products", products},
                       {"pairings", pairings}});
    }
    if (inv.json) write_file(*inv.json, json{{"descriptor", json::parse(serialize_descriptor(d))}, {"results", all}}.dump(2));
    return exit_ok;
}

int cmd_realize(const CommandInvocation& inv, std::ostream& out) {
    if (!inv.plan) throw UsageError("realize needs --plan PATH");
    auto plan = load_plan(*inv.plan);
    ReebDescriptor d;
    try {
        d = realize(plan);
    } catch (const PreconditionError& e) {
        out << "plan rejected\n" << e.what() << "\n";
        return exit_failure;
    }
    auto text = serialize_descriptor(d);
    if (inv.output) {
        write_file(*inv.output, text);
        out << "realized: " << summary(d) << "\n";
    } else {
        out << text << "\n";
    }
    return exit_ok;
}

VerifyOptions verify_options(const CommandInvocation& inv) {
    VerifyOptions o;
    try {
        o.tier = parse_tier(inv.tier);
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }
    return o;
}

int cmd_verify(const CommandInvocation& inv, std::ostream& out) {
    auto d = need_descriptor(inv);
    auto rings = resolve_rings(inv, default_catalog_rings());
    auto options = verify_options(inv);
    require_valid(d);
    auto report = verify_descriptor(d, rings, options);
    report.name = *inv.descriptor;
    out << report_table(report);
    if (inv.json) write_file(*inv.json, report_to_json(report));
    return report.all_match() ? exit_ok : exit_failure;
}

int cmd_infer(const CommandInvocation& inv, std::ostream& out) {
    auto d = need_descriptor(inv);
    if (!inv.m) throw UsageError("infer-manifold needs -m M");
    auto rings = resolve_rings(inv, {CoefficientRing::integers()});
    require_valid(d);
    json all = json::array();
    for (const auto& ring : rings) {
        auto rep = manifold_inference(d, *inv.m, ring);
        out << "source manifold inference over " << ring.name() << ": m=" << rep.m << " n=" << rep.n << "\n";
        out << "  qualifies: " << (rep.qualifies ? "yes" : "no") << "\n";
        out << "  assumption: " << rep.assumption << "\n";
        out << "  isomorphic in degrees j <= " << rep.iso_max_degree << "\n";
        out << "  truncated ring ranks " << ranks_text(rep.truncated_ring.ranks()) << "\n";
        out << "  rank H_*(W_f) = " << rep.reeb_total_rank << "\n";
        if (rep.manifold_total_rank) out << "  rank H_*(M) = " << *rep.manifold_total_rank << "\n";
        json j{{"ring", ring.name()},
               {"n", rep.n},
               {"m", rep.m},
               {"qualifies", rep.qualifies},
               {"assumption", rep.assumption},
               {"iso_max_degree", rep.iso_max_degree},
               {"truncated_ranks", rep.truncated_ring.ranks()},
               {"reeb_total_rank", rep.reeb_total_rank},
               {"manifold_total_rank", nullptr}};
        if (rep.manifold_total_rank) j["manifold_total_rank"] = *rep.manifold_total_rank;
        all.push_back(j);
    }
    if (inv.json) write_file(*inv.json, json{{"results", all}}.dump(2));
    return exit_ok;
}

int cmd_catalog(const CommandInvocation& inv, std::ostream& out) {
    CatalogOptions o;
    o.rings = resolve_rings(inv, default_catalog_rings());
    o.tier = verify_options(inv).tier;
    if (inv.seed) o.seed = *inv.seed;
    o.only = inv.only;
    o.workers = inv.workers;
    std::vector<VerificationReport> reports;
    try {
        reports = catalog_suite(o);
    } catch (const PreconditionError& e) {
        throw UsageError(e.what());
    }
    std::size_t matched = 0;
    for (const auto& r : reports) {
        out << (r.all_match() ? "ok    " : "FAIL  ") << r.name;
        for (const auto& rv : r.rings)
            out << "  " << rv.ring << ":t" << rv.tier << (rv.ok() ? "" : "!");
        out << "\n";
        if (!r.all_match()) {
            std::istringstream table(report_table(r));
            for (std::string line; std::getline(table, line);) out << "      " << line << "\n";
        }
        matched += r.all_match();
    }
    out << matched << "/" << reports.size() << " instances match (seed " << o.seed << ")\n";
    if (inv.json) write_file(*inv.json, reports_to_json(reports));
    return matched == reports.size() ? exit_ok : exit_failure;
}

} // namespace

int run_command(const CommandInvocation& inv, std::ostream& out, std::ostream& err) {
    try {
        if (inv.command == "validate") return cmd_validate(inv, out);
        if (inv.command == "homology") return cmd_homology(inv, out);
        if (inv.command == "ring") return cmd_ring(inv, out);
        if (inv.command == "realize") return cmd_realize(inv, out);
        if (inv.command == "verify") return cmd_verify(inv, out);
        if (inv.command == "infer-manifold") return cmd_infer(inv, out);
        if (inv.command == "catalog") return cmd_catalog(inv, out);
        err << "error: unknown command '" << inv.command << "'\n";
        return exit_usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const IoError& e) {
        err << "error: unreadable file: " << e.what() << "\n";
        return exit_usage;
    } catch (const SchemaError& e) {
        err << "error: schema violation: " << e.what() << "\n";
        return exit_failure;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reeb spaces of fold maps built by bubbling operations", "reeb-bubble"};
    app.require_subcommand(1);
    CommandInvocation inv;

    auto add_descriptor = [&](CLI::App* c) { c->add_option("-d,--descriptor", inv.descriptor, "descriptor JSON file"); };
    auto add_rings = [&](CLI::App* c) {
        c->add_option("--ring", inv.rings, "coefficient ring: Z, Q, Zp or Z/p (repeatable)");
        c->add_option("--p", inv.primes, "prime for each Zp ring, in order (repeatable)");
    };
    auto add_json = [&](CLI::App* c) { c->add_option("--json", inv.json, "write a JSON report to PATH"); };
    auto add_tier = [&](CLI::App* c) { c->add_option("--tier", inv.tier, "oracle tier: auto, 1 or 2"); };

    auto* validate_cmd = app.add_subcommand("validate", "check a descriptor against the rules");
    add_descriptor(validate_cmd);
    add_json(validate_cmd);

    auto* homology_cmd = app.add_subcommand("homology", "homology of the Reeb space");
    add_descriptor(homology_cmd);
    add_rings(homology_cmd);
    add_json(homology_cmd);

    auto* ring_cmd = app.add_subcommand("ring", "cohomology ring of the Reeb space");
    add_descriptor(ring_cmd);
    add_rings(ring_cmd);
    add_json(ring_cmd);

    auto* realize_cmd = app.add_subcommand("realize", "turn a plan into a descriptor");
    realize_cmd->add_option("--plan", inv.plan, "plan JSON file");
    realize_cmd->add_option("-o,--output", inv.output, "write the descriptor to PATH");

    auto* verify_cmd = app.add_subcommand("verify", "cross-check the formulas against the oracles");
    add_descriptor(verify_cmd);
    add_rings(verify_cmd);
    add_tier(verify_cmd);
    add_json(verify_cmd);

    auto* infer_cmd = app.add_subcommand("infer-manifold", "what the Reeb space says about the source manifold");
    add_descriptor(infer_cmd);
    infer_cmd->add_option("-m", inv.m, "dimension of the source manifold");
    add_rings(infer_cmd);
    add_json(infer_cmd);

    auto* catalog_cmd = app.add_subcommand("catalog", "verify the built-in catalog");
    catalog_cmd->add_option("--seed", inv.seed, "seed for the random instances");
    catalog_cmd->add_option("--only", inv.only, "instance name (repeatable)");
    catalog_cmd->add_option("--workers", inv.workers, "parallel workers (0: all cores)");
    add_rings(catalog_cmd);
    add_tier(catalog_cmd);
    add_json(catalog_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    inv.command = app.get_subcommands().front()->get_name();
    return run_command(inv, out, err);
}

} // namespace reeb
