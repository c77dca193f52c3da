#include "shiftlab/report.hpp"

#include <algorithm>

#include "shiftlab/dynamics.hpp"
#include "shiftlab/recode.hpp"

namespace shiftlab {

namespace {

using nlohmann::json;

json mat_json(const Mat& m) {
    json rows = json::array();
    for (const auto& r : m.rows()) rows.push_back(r);
    return rows;
}

json torus_json(const TorusConfig& t, const Alphabet& alphabet) {
    json j;
    j["periods"] = t.periods;
    j["ascii"] = render_ascii(t, alphabet);
    return j;
}

json verdict_json(const Verdict& v, const Alphabet& alphabet) {
    json j;
    j["status"] = to_string(v.status);
    j["criterion"] = v.criterion;
    j["detail"] = v.detail;
    if (v.witness) j["witness"] = torus_json(*v.witness, alphabet);
    return j;
}

const char* oracle_status_str(OracleStatus s) {
    switch (s) {
        case OracleStatus::NonemptyWitness: return "nonempty_witness";
        case OracleStatus::EmptyCertificate: return "empty_certificate";
        case OracleStatus::Unknown: return "unknown";
    }
    return "unknown";
}

json oracle_json(const OracleVerdict& o, const Alphabet& alphabet) {
    json j;
    j["status"] = oracle_status_str(o.status);
    j["note"] = o.note;
    if (o.witness) j["witness"] = torus_json(*o.witness, alphabet);
    if (o.certificate_n) j["certificate_side"] = *o.certificate_n;
    return j;
}

json tri_json(const Triomino& t, const Alphabet& alphabet) {
    return json::array({alphabet.name(t.a), alphabet.name(t.b), alphabet.name(t.c)});
}

json tables_json(const EPairTables& t, const Alphabet& alphabet) {
    json j;
    j["lower_right_squares"] = json::array();
    for (const auto& tri : t.a1) j["lower_right_squares"].push_back(tri_json(tri, alphabet));
    j["upper_left_squares"] = json::array();
    for (const auto& tri : t.a2) j["upper_left_squares"].push_back(tri_json(tri, alphabet));
    j["m"] = mat_json(t.m);
    j["n"] = mat_json(t.n);
    j["pairs"] = json::array();
    for (const auto& [i, k] : t.epairs) j["pairs"].push_back(json::array({i, k}));
    return j;
}

json products_json(const ProductReport& p) {
    json j;
    j["hv"] = mat_json(p.hv);
    j["vh"] = mat_json(p.vh);
    j["h_vt"] = mat_json(p.hvt);
    j["vt_h"] = mat_json(p.vth);
    j["pruned_hv"] = mat_json(p.pruned_hv);
    j["pruned_vh"] = mat_json(p.pruned_vh);
    return j;
}

json input_json(const SpecFile& sf) {
    json j;
    j["digest"] = sf.digest_hex;
    j["dimension"] = sf.spec.dimension;
    j["symbols"] = sf.spec.alphabet.symbols;
    j["one_step"] = sf.spec.is_one_step();
    j["forbidden_count"] = sf.spec.forbidden.size();
    return j;
}

struct ResolvedGraph {
    MultiGraph graph;
    bool recoded = false;
    Coords window;
    std::optional<BlockAlphabetCoding> coding;
};

ResolvedGraph resolve_graph(const SpecFile& sf, const SearchBudget& budget) {
    ResolvedGraph out;
    if (sf.graph) {
        out.graph = *sf.graph;
        return out;
    }
    if (sf.spec.dimension != 2)
        throw spec_error("this command requires a two-axis spec");
    if (sf.spec.is_one_step()) {
        out.graph = graph_from_one_step(sf.spec);
        return out;
    }
    Coords w(2, 1);
    for (const auto& pat : sf.spec.forbidden) {
        Coords e = pat.bounding_extents();
        for (int i = 0; i < 2; ++i) w[i] = std::max(w[i], e[i]);
    }
    auto rec = one_step_graph_for_sft(sf.spec, w, budget);
    out.graph = std::move(rec.graph);
    out.recoded = true;
    out.window = w;
    out.coding = std::move(rec.coding);
    return out;
}

json recoding_json(const ResolvedGraph& rg) {
    json j;
    j["window"] = rg.window;
    j["block_symbols"] = rg.graph.size();
    return j;
}

// lift a witness over a component subgraph back to the resolved graph's
// symbols and, if the spec was recoded, decode it to base symbols
json decoded_witness_json(const TorusConfig& t, const std::vector<int>& vertex_ids,
                          const ResolvedGraph& rg, const SpecFile& sf) {
    TorusConfig lifted = t;
    if (!vertex_ids.empty())
        for (auto& c : lifted.cells) c = vertex_ids[static_cast<std::size_t>(c)];
    if (rg.coding) {
        TorusConfig base = beta_inverse(lifted, *rg.coding);
        json j = torus_json(base, sf.spec.alphabet);
        j["recoded_from_blocks"] = true;
        return j;
    }
    return torus_json(lifted, rg.graph.vertices);
}

json report_base(const char* command, const SpecFile& sf) {
    json j;
    j["command"] = command;
    j["version"] = tool_version;
    j["input"] = input_json(sf);
    return j;
}

json unknown_report(const char* command, const SpecFile& sf, const std::string& note) {
    json j = report_base(command, sf);
    j["status"] = "unknown";
    j["note"] = note;
    return j;
}

} // namespace

nlohmann::json strip_volatile(nlohmann::json report) {
    report.erase("timing");
    return report;
}

CommandResult cmd_analyze(const SpecFile& sf, const AnalysisOptions& opts) {
    CommandResult out;
    json& j = out.report;
    j = report_base("analyze", sf);
    try {
        auto rg = resolve_graph(sf, opts.budget);
        if (rg.recoded) j["recoding"] = recoding_json(rg);
        AnalysisResult res = analyze(rg.graph, opts);

        json trim_j;
        trim_j["kept"] = json::array();
        for (int id : res.trim.kept) trim_j["kept"].push_back(rg.graph.vertices.name(id));
        trim_j["removed"] = json::array();
        for (int id : res.trim.removed) trim_j["removed"].push_back(rg.graph.vertices.name(id));
        j["trim"] = trim_j;

        j["components"] = json::array();
        for (const auto& ca : res.components) {
            json c;
            c["vertices"] = json::array();
            for (int id : ca.vertex_ids) c["vertices"].push_back(rg.graph.vertices.name(id));
            c["horizontal"] = {{"permutation", ca.h_pred.permutation},
                               {"irreducible", ca.h_pred.irreducible}};
            c["vertical"] = {{"permutation", ca.v_pred.permutation},
                             {"irreducible", ca.v_pred.irreducible}};
            c["products"] = products_json(ca.products);
            c["tables"] = tables_json(ca.tables, ca.graph.vertices);
            c["criteria"] = json::array();
            for (const auto& v : ca.criteria)
                c["criteria"].push_back(verdict_json(v, ca.graph.vertices));
            c["oracle"] = oracle_json(ca.oracle, ca.graph.vertices);
            c["conclusion"] = verdict_json(ca.conclusion, ca.graph.vertices);
            j["components"].push_back(std::move(c));
        }
        j["overall"] = verdict_json(res.overall, rg.graph.vertices);
        out.exit_code = res.overall.status == Status::Inconclusive ? 2 : 0;
    } catch (const budget_error& e) {
        out.report = unknown_report("analyze", sf, e.what());
        out.exit_code = 2;
    }
    return out;
}

CommandResult cmd_nonempty(const SpecFile& sf, const AnalysisOptions& opts) {
    CommandResult out;
    try {
        auto rg = resolve_graph(sf, opts.budget);
        AnalysisResult res = analyze(rg.graph, opts);
        json& j = out.report;
        j = report_base("nonempty", sf);
        if (rg.recoded) j["recoding"] = recoding_json(rg);
        j["status"] = to_string(res.overall.status);
        j["criterion"] = res.overall.criterion;
        j["detail"] = res.overall.detail;
        for (const auto& ca : res.components) {
            if (ca.conclusion.status != Status::Nonempty) continue;
            if (ca.conclusion.witness)
                j["witness"] = decoded_witness_json(*ca.conclusion.witness, ca.vertex_ids, rg, sf);
            else if (ca.oracle.status == OracleStatus::NonemptyWitness && ca.oracle.witness)
                j["witness"] = decoded_witness_json(*ca.oracle.witness, ca.vertex_ids, rg, sf);
            if (j.contains("witness")) break;
        }
        out.exit_code = res.overall.status == Status::Inconclusive ? 2 : 0;
    } catch (const budget_error& e) {
        out.report = unknown_report("nonempty", sf, e.what());
        out.exit_code = 2;
    }
    return out;
}

CommandResult cmd_finite(const SpecFile& sf, const AnalysisOptions& opts) {
    CommandResult out;
    try {
        auto rg = resolve_graph(sf, opts.budget);
        AnalysisResult res = analyze(rg.graph, opts);
        json& j = out.report;
        j = report_base("finite", sf);
        if (rg.recoded) j["recoding"] = recoding_json(rg);
        bool all = true;
        j["components"] = json::array();
        for (const auto& ca : res.components) {
            bool both_perms = ca.h_pred.permutation && ca.v_pred.permutation;
            const Verdict& mn = ca.criteria.back();
            bool empty = ca.conclusion.status == Status::Empty;
            bool fin = both_perms || mn.status == Status::FiniteSufficient || empty;
            std::string reason =
                both_perms ? "both matrices are permutations, so each configuration is determined "
                             "by one symbol"
                : mn.status == Status::FiniteSufficient ? mn.detail
                : empty                                 ? "the component is empty"
                                                        : "no finiteness criterion applies";
            json c;
            c["vertices"] = json::array();
            for (int id : ca.vertex_ids) c["vertices"].push_back(rg.graph.vertices.name(id));
            c["finite"] = fin;
            c["reason"] = reason;
            j["components"].push_back(std::move(c));
            all = all && fin;
        }
        j["status"] = all ? "finite" : "inconclusive";
        out.exit_code = all ? 0 : 2;
    } catch (const budget_error& e) {
        out.report = unknown_report("finite", sf, e.what());
        out.exit_code = 2;
    }
    return out;
}

CommandResult cmd_epairs(const SpecFile& sf, const SearchBudget& budget) {
    CommandResult out;
    try {
        auto rg = resolve_graph(sf, budget);
        json& j = out.report;
        j = report_base("epairs", sf);
        if (rg.recoded) j["recoding"] = recoding_json(rg);
        EPairTables t = build_epair_tables(rg.graph);
        j["tables"] = tables_json(t, rg.graph.vertices);
        j["products"] = products_json(products(rg.graph));
        bool unique1 = true, unique2 = true;
        for (int i = 0; i < static_cast<int>(t.a1.size()); ++i)
            unique1 = unique1 && t.epairs_of_a1(i).size() == 1;
        for (int k = 0; k < static_cast<int>(t.a2.size()); ++k)
            unique2 = unique2 && t.epairs_of_a2(k).size() == 1;
        j["pairings_unique"] = {{"lower_right", unique1}, {"upper_left", unique2}};
        j["finiteness"] = verdict_json(mn_finiteness_test(rg.graph), rg.graph.vertices);
        out.exit_code = 0;
    } catch (const budget_error& e) {
        out.report = unknown_report("epairs", sf, e.what());
        out.exit_code = 2;
    }
    return out;
}

CommandResult cmd_higher_block(const SpecFile& sf, const Coords& window,
                               const SearchBudget& budget) {
    CommandResult out;
    try {
        if (static_cast<int>(window.size()) != sf.spec.dimension)
            throw spec_error("window dimension does not match the spec");
        auto [one_step, coding] = higher_block_spec(sf.spec, window, budget);
        json& j = out.report;
        j = report_base("higher-block", sf);
        j["window"] = window;
        j["block_count"] = coding.blocks.size();
        j["block_symbols"] = one_step.alphabet.symbols;
        if (one_step.dimension == 2) {
            MultiGraph g = graph_from_one_step(one_step);
            j["hmatrix"] = mat_json(g.axes[0]);
            j["vmatrix"] = mat_json(g.axes[1]);
        }
        j["spec_text"] = print_spec(one_step);
        out.exit_code = 0;
    } catch (const budget_error& e) {
        out.report = unknown_report("higher-block", sf, e.what());
        out.exit_code = 2;
    }
    return out;
}

CommandResult cmd_periodic(const SpecFile& sf, int p, int q, const SearchBudget& budget) {
    CommandResult out;
    try {
        auto rg = resolve_graph(sf, budget);
        json& j = out.report;
        j = report_base("periodic", sf);
        if (rg.recoded) j["recoding"] = recoding_json(rg);
        auto ph = horizontal_periodic_exists(rg.graph, p, budget);
        auto pv = vertical_periodic_exists(rg.graph, q, budget);
        json hj{{"period", p}, {"exists", ph.exists}};
        if (ph.witness) hj["witness"] = decoded_witness_json(*ph.witness, {}, rg, sf);
        json vj{{"period", q}, {"exists", pv.exists}};
        if (pv.witness) vj["witness"] = decoded_witness_json(*pv.witness, {}, rg, sf);
        j["horizontal"] = std::move(hj);
        j["vertical"] = std::move(vj);
        out.exit_code = 0;
    } catch (const budget_error& e) {
        out.report = unknown_report("periodic", sf, e.what());
        out.exit_code = 2;
    }
    return out;
}

CommandResult cmd_oracle(const SpecFile& sf, const Coords& periods, const SearchBudget& budget,
                         long long list_limit) {
    CommandResult out;
    try {
        auto found = torus_search_spec(sf.spec, periods, budget);
        json& j = out.report;
        j = report_base("oracle", sf);
        j["periods"] = periods;
        j["count"] = found.size();
        j["status"] = found.empty() ? "no_torus_at_periods" : "nonempty_witness";
        j["configurations"] = json::array();
        for (std::size_t i = 0; i < found.size() && static_cast<long long>(i) < list_limit; ++i)
            j["configurations"].push_back(torus_json(found[i], sf.spec.alphabet));
        out.exit_code = 0;
    } catch (const budget_error& e) {
        out.report = unknown_report("oracle", sf, e.what());
        out.exit_code = 2;
    }
    return out;
}

CommandResult cmd_growth(const SpecFile& sf, int n_max, const SearchBudget& budget) {
    CommandResult out;
    try {
        if (n_max < 1) throw spec_error("--max must be positive");
        json& j = out.report;
        j = report_base("growth", sf);
        j["counts"] = json::array();
        bool truncated = false;
        for (int n = 1; n <= n_max; ++n) {
            Coords ext(static_cast<std::size_t>(sf.spec.dimension), n);
            try {
                auto blocks = enumerate_admissible_blocks(sf.spec, ext, budget);
                j["counts"].push_back(blocks.size());
            } catch (const budget_error&) {
                truncated = true;
                break;
            }
        }
        j["truncated"] = truncated;
        out.exit_code = truncated ? 2 : 0;
    } catch (const budget_error& e) {
        out.report = unknown_report("growth", sf, e.what());
        out.exit_code = 2;
    }
    return out;
}

} // namespace shiftlab
