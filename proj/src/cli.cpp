#include "latcoh/cli.hpp"

#include "latcoh/cohomology.hpp"
#include "latcoh/dedekind.hpp"
#include "latcoh/document.hpp"
#include "latcoh/errors.hpp"
#include "latcoh/flabby.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

namespace latcoh {

namespace {

using nlohmann::json;

std::string fnv1a64(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

json invariants_json(const AbelianInvariants& v) {
    json torsion = json::array();
    for (const auto& t : v.torsion) torsion.push_back(t.get_str());
    return json{{"free_rank", v.free_rank}, {"torsion", torsion}};
}

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

json tate_json(const TateModule& t) {
    json j{{"invariants", invariants_json(t.invariants)}};
    if (t.zeta_blocks) j["zeta_blocks"] = *t.zeta_blocks;
    return j;
}

json lattice_summary(const GroupLattice& m) {
    return json{{"base", m.base.to_string()},
                {"group_order", m.group.order},
                {"rank", m.z_rank}};
}

struct Input {
    GroupLattice lattice;
    std::string canonical; // emitted document; the digest is taken over this
};

Input load_input(const std::string& file, const std::string& builtin) {
    if (!file.empty() && !builtin.empty())
        throw ParseError("give either an input file or --builtin, not both");
    GroupLattice m;
    if (!builtin.empty()) {
        m = builtin_lattice(builtin);
    } else if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw ParseError("cannot open input file '" + file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        m = parse_document(buf.str());
    } else {
        throw ParseError("an input file or --builtin is required");
    }
    std::string canonical = emit_document(m);
    return Input{std::move(m), std::move(canonical)};
}

struct Emitter {
    std::string command;
    long seed = 0;
    std::string format = "text";
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void emit(std::ostream& out, const std::string& digest_payload, const std::string& human,
              const json& results) const {
        json report{{"format_version", 1},
                    {"command", command},
                    {"seed", seed},
                    {"input_digest", fnv1a64(command + '\0' + digest_payload + '\0' +
                                             std::to_string(seed))},
                    {"results", results}};
        const std::string structured = report.dump(2);
        if (format == "structured") {
            out << structured << "\n";
            return;
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        out << human;
        out << "wall clock: " << ms << " ms\n";
        out << "--- structured ---\n" << structured << "\n";
    }
};

std::string render_invariants(const AbelianInvariants& v) { return v.to_string(); }

std::string render_blocks(const std::vector<long>& blocks) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < blocks.size(); ++i) os << (i ? "," : "") << blocks[i];
    os << "}";
    return os.str();
}

void cmd_cohomology(const Input& in, long subgroup_order, bool all, const Emitter& em,
                    std::ostream& out) {
    const long n = in.lattice.group.order;
    if (!all && (subgroup_order < 1 || n % subgroup_order != 0))
        throw ParseError("--subgroup must divide the group order");

    TateProfile profile = tate_profile(in.lattice);
    json rows = json::array();
    std::ostringstream human;
    human << "cohomology of " << in.lattice.base.to_string() << "-lattice of rank "
          << in.lattice.z_rank << " over C_" << n << "\n";
    for (const auto& [h, t] : profile.by_subgroup) {
        if (!all && h.order != subgroup_order) continue;
        rows.push_back(json{{"subgroup_order", h.order},
                            {"h_minus1", tate_json(t.minus_one)},
                            {"h0", tate_json(t.zero)},
                            {"h1", tate_json(t.one)}});
        human << "  subgroup of order " << h.order
              << ": H^-1 = " << render_invariants(t.minus_one.invariants)
              << ", H^0 = " << render_invariants(t.zero.invariants)
              << ", H^1 = " << render_invariants(t.one.invariants) << "\n";
    }
    em.emit(out, in.canonical,
            human.str(), json{{"lattice", lattice_summary(in.lattice)}, {"profile", rows}});
}

json witness_json(const std::optional<ClassificationWitness>& w) {
    if (!w) return nullptr;
    return json{{"subgroup_order", w->subgroup_order},
                {"degree", w->degree},
                {"group", invariants_json(w->group)}};
}

void cmd_classify(const Input& in, const Emitter& em, std::ostream& out) {
    Classification c = classify(in.lattice);
    json results{{"lattice", lattice_summary(in.lattice)},
                 {"flabby", c.is_flabby},
                 {"coflabby", c.is_coflabby},
                 {"flabby_witness", witness_json(c.flabby_witness)},
                 {"coflabby_witness", witness_json(c.coflabby_witness)}};

    std::ostringstream human;
    human << "classification over C_" << in.lattice.group.order << ": "
          << (c.is_flabby ? "flabby" : "not flabby") << ", "
          << (c.is_coflabby ? "coflabby" : "not coflabby") << "\n";
    if (c.flabby_witness)
        human << "  witness: H^-1 at subgroup of order " << c.flabby_witness->subgroup_order
              << " = " << render_invariants(c.flabby_witness->group) << "\n";
    if (c.coflabby_witness)
        human << "  witness: H^1 at subgroup of order " << c.coflabby_witness->subgroup_order
              << " = " << render_invariants(c.coflabby_witness->group) << "\n";

    // Permutation profile for prime order under p-local semantics.
    if (in.lattice.base.is_localized() && is_prime(in.lattice.group.order) &&
        in.lattice.group.order == in.lattice.base.p) {
        CpRecognition rec = permutation_recognize_cp(in.lattice, in.lattice.base.p);
        if (const auto* d = std::get_if<CpDecomposition>(&rec)) {
            results["cp_profile"] = json{{"trivial_multiplicity", d->trivial_multiplicity},
                                         {"regular_multiplicity", d->regular_multiplicity}};
            human << "  permutation profile: Z^" << d->trivial_multiplicity << " + (Z C_p)^"
                  << d->regular_multiplicity << "\n";
        } else {
            const auto& np = std::get<NotPermutation>(rec);
            results["cp_profile"] = json{{"not_permutation", np.reason},
                                         {"witness", witness_json(np.witness)}};
            human << "  not a permutation lattice: " << np.reason << "\n";
        }
    } else {
        results["cp_profile"] = nullptr;
    }
    em.emit(out, in.canonical, human.str(), results);
}

void cmd_resolve(const Input& in, const Emitter& em, std::ostream& out) {
    Resolution res = flabby_resolution(in.lattice);
    Classification outer_cls = classify(res.outer);
    json results{
        {"lattice", lattice_summary(in.lattice)},
        {"middle_orbits", *res.middle.perm_orbits},
        {"middle_rank", res.middle.z_rank},
        {"outer_rank", res.outer.z_rank},
        {"inject", matrix_json(res.inject.matrix)},
        {"surject", matrix_json(res.surject.matrix)},
        {"middle_document", emit_document(res.middle)},
        {"outer_document", emit_document(res.outer)},
        {"exact", true}, // validated on construction
        {"outer_flabby", outer_cls.is_flabby},
    };
    std::ostringstream human;
    human << "flabby resolution 0 -> M -> P -> E -> 0 with rank(M) = " << res.inner.z_rank
          << ", rank(P) = " << res.middle.z_rank << ", rank(E) = " << res.outer.z_rank << "\n";
    human << "  P orbits:";
    for (long d : *res.middle.perm_orbits) human << " " << d;
    human << "\n  E is " << (outer_cls.is_flabby ? "flabby" : "NOT flabby (bug)") << "\n";
    em.emit(out, in.canonical, human.str(), results);
}

void cmd_decompose(const Input& in, const Emitter& em, std::ostream& out) {
    PhiDecomposition dec = phi_decompose(in.lattice);
    json comps = json::array();
    std::ostringstream human;
    human << "Phi-decomposition over C_" << in.lattice.group.order << "\n";
    for (const auto& c : dec.components) {
        json steinitz{{"d", c.steinitz.cyclotomic_index},
                      {"rank", c.steinitz.rank},
                      {"class", c.steinitz.supported ? "trivial" : "unsupported"}};
        comps.push_back(json{{"d", c.d},
                             {"z_rank", c.z_rank},
                             {"zeta_rank", c.zeta_rank},
                             {"torsion", invariants_json(c.torsion)},
                             {"steinitz", steinitz}});
        human << "  d = " << c.d << ": rank over Z[zeta_d] = " << c.zeta_rank
              << ", torsion = " << render_invariants(c.torsion) << ", Steinitz "
              << (c.steinitz.supported ? "trivial" : "unsupported") << "\n";
    }
    json mob = json::array();
    for (const auto& t : dec.mobius_terms) {
        mob.push_back(json{{"d", t.d},
                           {"mu", t.mu},
                           {"torsion_free_rank", t.torsion_free_rank},
                           {"torsion", invariants_json(t.torsion)}});
        human << "  mu(n/" << t.d << ") = " << t.mu << ", M/(sigma^" << t.d
              << "-1)M: free rank " << t.torsion_free_rank << ", torsion "
              << render_invariants(t.torsion) << "\n";
    }
    human << "  rank identity: " << (dec.rank_identity_holds ? "holds" : "FAILS") << "\n";
    em.emit(out, in.canonical, human.str(),
            json{{"lattice", lattice_summary(in.lattice)},
                 {"components", comps},
                 {"mobius_terms", mob},
                 {"rank_identity", dec.rank_identity_holds}});
}

json polymod_json(const PolyModP& f) {
    return json{{"p", f.p}, {"coeffs", f.coeffs}, {"text", f.to_string()}};
}

void cmd_dedekind(long n, const Emitter& em, std::ostream& out) {
    if (n < 1) throw ParseError("--n must be >= 1");
    MaximalityReport rep = verify_theorem_3_3(n);
    json checks = json::array();
    std::ostringstream human;
    human << "Dedekind criterion for Phi_" << n << "\n";
    for (const auto& v : rep.checked) {
        checks.push_back(json{{"p", v.p},
                              {"maximal", v.maximal},
                              {"g_bar", polymod_json(v.g_bar)},
                              {"h_bar", polymod_json(v.h_bar)},
                              {"f_quotient", polymod_json(v.f_bar_quotient)},
                              {"gcd", polymod_json(v.gcd)}});
        human << "  p = " << v.p << ": " << (v.maximal ? "p-maximal" : "NOT p-maximal")
              << " (gcd = " << v.gcd.to_string() << ")\n";
    }
    if (rep.checked.empty()) human << "  no primes divide n; nothing to check\n";
    human << "  note: " << rep.skipped_note << "\n";
    em.emit(out, "dedekind:" + std::to_string(n), human.str(),
            json{{"n", n},
                 {"checked", checks},
                 {"all_maximal", rep.all_maximal()},
                 {"skipped_note", rep.skipped_note}});
}

void cmd_example_4_3(long p, bool gaussian, const Emitter& em, std::ostream& out) {
    CounterexampleReport rep = counterexample_4_3(p, gaussian);
    json results{{"p", rep.p},
                 {"group_order", rep.group_order},
                 {"ring_index", rep.ring_index},
                 {"block_modulus", rep.block_modulus},
                 {"hypotheses_violated", rep.hypotheses_violated},
                 {"h_minus1_m_blocks", rep.h_minus1_m_blocks},
                 {"h0_p_blocks", rep.h0_p_blocks},
                 {"h0_e_blocks", rep.h0_e_blocks},
                 {"h0_trivial_reference_blocks", rep.h0_trivial_reference_blocks},
                 {"h0_e_length", rep.h0_e_length},
                 {"length_additivity", rep.length_additivity_holds},
                 {"verdict", rep.not_invertible ? "NotInvertible" : "NoObstructionFound"}};
    std::ostringstream human;
    human << "counterexample driver: R = Z[zeta_" << rep.ring_index << "], pi = C_"
          << rep.group_order << ", ramified prime " << rep.p << "\n";
    human << "  hypothesis (iii) violated (ramified): "
          << (rep.hypotheses_violated ? "yes" : "no") << "\n";
    human << "  H^-1(pi, M) blocks: " << render_blocks(rep.h_minus1_m_blocks) << "\n";
    human << "  H^0(pi, P) blocks: " << render_blocks(rep.h0_p_blocks) << "\n";
    human << "  H^0(pi, E) blocks: " << render_blocks(rep.h0_e_blocks) << " (length "
          << rep.h0_e_length << ")\n";
    human << "  H^0(pi, R-trivial) reference blocks: "
          << render_blocks(rep.h0_trivial_reference_blocks) << "\n";
    human << "  length additivity: " << (rep.length_additivity_holds ? "holds" : "FAILS") << "\n";
    human << "  verdict: "
          << (rep.not_invertible ? "E is NOT invertible" : "no length obstruction found") << "\n";
    em.emit(out, "example-4-3:" + std::to_string(rep.p) + (gaussian ? ":gaussian" : ""),
            human.str(), results);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lattices over group rings of cyclic groups: Tate cohomology, "
                 "flabby classification, resolutions, and cyclotomic witnesses"};
    app.require_subcommand(1);

    long seed = 0;
    std::string format = "text";
    std::string file, builtin;
    long subgroup_order = 0;
    bool all_subgroups = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "seed echoed into the report digest");
        cmd->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"text", "structured"}));
    };
    auto add_input = [&](CLI::App* cmd) {
        add_common(cmd);
        cmd->add_option("file", file, "lattice document");
        cmd->add_option("--builtin", builtin,
                        "builtin lattice: regular:N, trivial:N, augmentation:N, "
                        "zeta-twist:P, permutation:N:d1,d2,...");
    };

    CLI::App* coh = app.add_subcommand("cohomology", "Tate groups per subgroup");
    add_input(coh);
    coh->add_option("--subgroup", subgroup_order, "only the subgroup of this order");
    coh->add_flag("--all", all_subgroups, "all subgroups (default)");

    CLI::App* cls = app.add_subcommand("classify", "flabby/coflabby verdicts");
    add_input(cls);

    CLI::App* res = app.add_subcommand("resolve", "flabby resolution 0 -> M -> P -> E -> 0");
    add_input(res);

    CLI::App* dec = app.add_subcommand("decompose", "per-divisor Phi-decomposition data");
    add_input(dec);

    long dedekind_n = 0;
    CLI::App* ded = app.add_subcommand("dedekind", "p-maximality of Z[X]/Phi_n at primes p | n");
    add_common(ded);
    ded->add_option("--n", dedekind_n, "cyclotomic index")->required();

    long ex_p = 3;
    bool gaussian = false;
    CLI::App* ex = app.add_subcommand("example-4-3", "ramified-base counterexample driver");
    add_common(ex);
    ex->add_option("--p", ex_p, "odd prime <= 7");
    ex->add_flag("--gaussian", gaussian, "p = 2 variant over Z[sqrt(-1)]");

    std::vector<const char*> argv;
    argv.push_back("latcoh");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    Emitter em;
    em.seed = seed;
    em.format = format;

    try {
        if (coh->parsed() || cls->parsed() || res->parsed() || dec->parsed()) {
            Input in = load_input(file, builtin);
            if (coh->parsed()) {
                em.command = "cohomology";
                cmd_cohomology(in, subgroup_order, all_subgroups || subgroup_order == 0, em, out);
            } else if (cls->parsed()) {
                em.command = "classify";
                cmd_classify(in, em, out);
            } else if (res->parsed()) {
                em.command = "resolve";
                cmd_resolve(in, em, out);
            } else {
                em.command = "decompose";
                cmd_decompose(in, em, out);
            }
        } else if (ded->parsed()) {
            em.command = "dedekind";
            cmd_dedekind(dedekind_n, em, out);
        } else if (ex->parsed()) {
            em.command = "example-4-3";
            cmd_example_4_3(ex_p, gaussian, em, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UnsupportedPrime& e) {
        err << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

} // namespace latcoh
