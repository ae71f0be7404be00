// Copyright 2026 The stabdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: one subcommand per certificate. Every command
// builds a report, prints it as text, JSON or CSV, and exits 0 only when all
// of its checks pass.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stabdisc/channel.hpp"
#include "stabdisc/discrimination.hpp"
#include "stabdisc/entropy.hpp"
#include "stabdisc/io.hpp"
#include "stabdisc/protocol.hpp"
#include "stabdisc/state_sets.hpp"
#include "stabdisc/statevector.hpp"

namespace {

using namespace stabdisc;
using io::json;

struct RunConfig {
    std::string format = "text";
    std::string output;
    int max_depth = 8;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;

    json echo() const {
        return {{"format", format}, {"max_depth", max_depth}, {"threads", threads},
                {"seed", seed},     {"tolerance", tolerance}};
    }
};

struct Report {
    std::string command;
    json params = json::object();
    json data = json::object();
    std::ostringstream text;
    std::vector<std::vector<std::string>> table;  // header first
    std::vector<std::string> failures;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            failures.push_back(what);
        }
    }
};

std::string fmt(double v, int digits = 10) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_escape(const std::string &cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (char c : cell) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::string render(const Report &r, const RunConfig &cfg) {
    const bool pass = r.failures.empty();
    if (cfg.format == "json") {
        json doc = {{"schema", io::kReportSchema},
                    {"command", r.command},
                    {"config", cfg.echo()},
                    {"params", r.params},
                    {"status", pass ? "pass" : "fail"},
                    {"failures", r.failures},
                    {"result", r.data}};
        return doc.dump(2) + "\n";
    }
    if (cfg.format == "csv") {
        std::ostringstream out;
        if (r.table.empty()) {
            out << "key,value\n";
            for (const auto &[k, v] : r.data.items()) {
                if (v.is_primitive()) {
                    out << csv_escape(k) << ',' << csv_escape(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
                }
            }
        }
        for (const auto &row : r.table) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << csv_escape(row[i]);
            }
            out << '\n';
        }
        return out.str();
    }
    std::ostringstream out;
    out << r.text.str();
    out << "status: " << (pass ? "PASS" : "FAIL") << '\n';
    for (const auto &f : r.failures) {
        out << "  failure: " << f << '\n';
    }
    return out.str();
}

int emit(const Report &r, const RunConfig &cfg) {
    const std::string body = render(r, cfg);
    std::string path = cfg.output;
    if (path.empty()) {
        if (const char *dir = std::getenv("STABDISC_OUT_DIR"); dir != nullptr && *dir != '\0') {
            std::filesystem::create_directories(dir);
            const std::string ext = cfg.format == "text" ? "txt" : cfg.format;
            path = (std::filesystem::path(dir) / (r.command + "." + ext)).string();
        }
    }
    std::cout << body;
    if (!path.empty()) {
        std::ofstream out(path);
        if (!out) {
            std::cerr << "cannot write " << path << '\n';
            return 2;
        }
        out << body;
    }
    if (!r.failures.empty()) {
        json fail = {{"status", "fail"}, {"command", r.command}, {"failures", r.failures}};
        std::cerr << fail.dump() << '\n';
        return 1;
    }
    return 0;
}

std::string join(const std::vector<int> &v, const char *sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? sep : "") + std::to_string(v[i]);
    }
    return s;
}

LabeledEnsemble builtin_or_file(const std::string &name, std::string &described) {
    described = name;
    if (name == "six") {
        return six_state_set();
    }
    if (name == "mixed") {
        return mixed_pair();
    }
    if (name == "hiding") {
        return data_hiding_states();
    }
    if (name == "theorem3") {
        return generalized_set(2, BooleanFunction::inner_product(2)).ensemble;
    }
    if (name.rfind("loo", 0) == 0 && name.size() == 4 && name[3] >= '1' && name[3] <= '6') {
        return six_state_set().without({name[3] - '0'});
    }
    described = "file:" + name;
    return io::ensemble_from_json(io::read_json_file(name));
}

// ---------------------------------------------------------------------------

Report cmd_theorem1(const RunConfig &cfg, std::size_t max_witnesses) {
    Report r;
    r.command = "theorem1";
    r.params = {{"max_witnesses", max_witnesses}};
    const auto six = six_state_set();
    const auto rep = first_round_report(six, {max_witnesses});
    r.table.push_back({"pauli", "balanced_labels", "witnesses", "first_witness", "condition_holds"});
    json rows = json::array();
    for (const auto &pr : rep.per_pauli) {
        std::string first;
        json ws = json::array();
        for (const auto &w : pr.witnesses) {
            ws.push_back({{"label", w.label}, {"other_label", w.other_label}, {"outcome", w.outcome},
                          {"overlap", to_string(w.overlap)}});
        }
        if (!pr.witnesses.empty()) {
            const auto &w = pr.witnesses.front();
            first = std::to_string(w.label) + "~" + std::to_string(w.other_label) + " a=" + std::to_string(w.outcome) +
                    " |<.|.>|^2=" + to_string(w.overlap);
        }
        r.table.push_back({pr.pauli.str(), join(pr.balanced), std::to_string(pr.witnesses.size()), first,
                           pr.condition_holds ? "true" : "false"});
        rows.push_back({{"pauli", pr.pauli.str()}, {"balanced", pr.balanced}, {"witnesses", ws},
                        {"condition_holds", pr.condition_holds}});
        r.require(pr.condition_holds, "no overlap witness for " + pr.pauli.str());
    }
    const auto decision = is_perfectly_discriminable(six, {cfg.max_depth, cfg.threads});
    r.require(decision.verdict == Verdict::No, "decision procedure did not return no");
    r.data = {{"paulis", rep.per_pauli.size()},
              {"condition_holds", rep.count_holding()},
              {"decision", verdict_name(decision.verdict)},
              {"decided_at_depth", decision.depth_searched},
              {"per_pauli", rows}};
    r.text << "six-state set, first-round analysis over " << rep.per_pauli.size() << " nontrivial Paulis\n";
    for (std::size_t i = 1; i < r.table.size(); ++i) {
        const auto &row = r.table[i];
        r.text << "  " << std::left << std::setw(6) << row[0] << " balanced {" << row[1] << "}  " << row[3] << '\n';
    }
    r.text << "condition holds for " << rep.count_holding() << "/" << rep.per_pauli.size() << '\n';
    r.text << "decision procedure: " << verdict_name(decision.verdict) << " (depth " << decision.depth_searched << ")\n";
    return r;
}

Report cmd_theorem2(const RunConfig &cfg) {
    Report r;
    r.command = "theorem2";
    r.table.push_back({"n", "size", "sets", "yes", "max_strategy_depth"});
    json per_n = json::array();
    for (std::size_t n : {1U, 2U}) {
        const auto all = enumerate_pure_stabilizer_states(n);
        const std::size_t m = all.size();
        std::vector<std::vector<bool>> orth(m, std::vector<bool>(m));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                orth[i][j] = overlap_squared(all[i], all[j]) == Rational(0);
            }
        }
        std::map<std::size_t, std::array<std::size_t, 3>> by_size;  // sets, yes, depth
        std::size_t product = 0;
        std::size_t adaptive = 0;
        std::vector<std::size_t> clique;
        std::function<void(std::size_t)> grow = [&](std::size_t from) {
            if (clique.size() >= 2) {
                std::vector<StabilizerState> states;
                for (auto i : clique) {
                    states.push_back(all[i]);
                }
                const auto e = LabeledEnsemble::uniform_pure(states);
                const auto res = is_perfectly_discriminable(e, {cfg.max_depth, 1});
                auto &slot = by_size[clique.size()];
                ++slot[0];
                if (res.verdict == Verdict::Yes && evaluate_strategy(e, *res.strategy) == Rational(1)) {
                    ++slot[1];
                    slot[2] = std::max<std::size_t>(slot[2], static_cast<std::size_t>(res.strategy->depth()));
                } else {
                    r.failures.push_back("n=" + std::to_string(n) + " set of size " + std::to_string(clique.size()) +
                                         " not discriminated");
                }
                if (n == 2 && clique.size() == 4) {
                    (classify_two_qubit_basis(states).form == BasisForm::Product ? product : adaptive) += 1;
                }
            }
            for (std::size_t v = from; v < m; ++v) {
                if (std::all_of(clique.begin(), clique.end(), [&](std::size_t u) { return orth[u][v]; })) {
                    clique.push_back(v);
                    grow(v + 1);
                    clique.pop_back();
                }
            }
        };
        grow(0);
        for (const auto &[size, s] : by_size) {
            r.table.push_back({std::to_string(n), std::to_string(size), std::to_string(s[0]), std::to_string(s[1]),
                               std::to_string(s[2])});
            per_n.push_back({{"n", n}, {"size", size}, {"sets", s[0]}, {"yes", s[1]}, {"max_strategy_depth", s[2]}});
            r.text << "n=" << n << " size " << size << ": " << s[1] << "/" << s[0]
                   << " perfectly discriminable (deepest strategy " << s[2] << ")\n";
        }
        if (n == 2) {
            r.data["bases"] = {{"product", product}, {"adaptive", adaptive}};
            r.text << "two-qubit bases: " << product << " product form, " << adaptive << " adaptive form\n";
        }
    }
    r.data["sets"] = per_n;
    return r;
}

Report cmd_theorem3(std::size_t n, const std::string &function, bool generic) {
    Report r;
    r.command = "theorem3";
    const auto f = function.empty() ? BooleanFunction::inner_product(n) : BooleanFunction::from_string(function);
    r.params = {{"n", n}, {"function", f.str()}, {"generic_check", generic}};
    if (3 * n > 12) {
        throw PreconditionError("3n above 12 qubits makes the Pauli sweep too large");
    }
    const bool vls = has_vanishing_linear_structure(f);
    r.require(vls, "f has a nonvanishing linear structure");
    if (!vls) {
        return r;
    }
    const auto set = generalized_set(n, f);
    std::size_t total = 0;
    std::array<std::size_t, 2> cases{0, 0};
    std::size_t generic_ok = 0;
    std::size_t witnesses_ok = 0;
    r.table.push_back({"pauli", "case", "block", "label", "other_label", "prob_of_zero", "overlap", "expected", "ok"});
    for (const auto &p : enumerate_hermitian_paulis(3 * n, false)) {
        ++total;
        const auto w = block_witness(set, f, p);
        ++cases[static_cast<std::size_t>(w.case_kind - 1)];
        r.table.push_back({p.str(), std::to_string(w.case_kind), std::to_string(w.block), std::to_string(w.label),
                           std::to_string(w.other_label), to_string(w.prob_of_zero), to_string(w.overlap),
                           to_string(w.expected), w.ok() ? "true" : "false"});
        witnesses_ok += w.ok() ? 1 : 0;
        r.require(w.ok(), "block witness fails for " + p.str());
        if (generic) {
            const bool holds = analyze_first_round(set.ensemble, p, {1}).condition_holds;
            generic_ok += holds ? 1 : 0;
            r.require(holds, "first-round condition fails for " + p.str());
        }
    }
    r.data = {{"qubits", 3 * n},
              {"states", set.ensemble.size()},
              {"f0_size", f.preimage(0).size()},
              {"f1_size", f.preimage(1).size()},
              {"paulis", total},
              {"case_x_part", cases[0]},
              {"case_z_type", cases[1]},
              {"witnesses_ok", witnesses_ok}};
    if (generic) {
        r.data["generic_condition_holds"] = generic_ok;
    }
    r.text << 3 * n << "-qubit family, n=" << n << ", f=" << f.str() << ": " << set.ensemble.size()
           << " pairwise orthogonal states\n";
    r.text << "Paulis checked: " << total << " (with an X part: " << cases[0] << ", Z-type: " << cases[1] << ")\n";
    r.text << "witness overlap is 2^-" << 2 * n << " with an X part and 1 for Z-type Paulis\n";
    if (generic) {
        r.text << "generic first-round condition holds for " << generic_ok << "/" << total << '\n';
    }
    return r;
}

Report cmd_lemma1(std::size_t ell) {
    Report r;
    r.command = "lemma1";
    r.params = {{"ancillas", ell}};
    const auto rep = ancilla_reduction_check(six_state_set(), ell);
    r.table.push_back({"pauli", "label", "outcome", "reason"});
    for (const auto &f : rep.failures) {
        r.table.push_back({f.pauli.str(), std::to_string(f.label), std::to_string(f.outcome), f.reason});
        r.failures.push_back(f.pauli.str() + " label " + std::to_string(f.label) + ": " + f.reason);
    }
    r.require(rep.recoverable + rep.factorizing == rep.total, "classification does not cover every Pauli");
    r.data = {{"paulis", rep.total}, {"recoverable", rep.recoverable}, {"factorizing", rep.factorizing}};
    r.text << "six-state set with " << ell << " ancilla qubit(s): " << rep.total << " Paulis\n";
    r.text << "  anticommute with an ancilla Z, undone by the recovery circuit: " << rep.recoverable << '\n';
    r.text << "  commute with every ancilla Z, act on the system alone: " << rep.factorizing << '\n';
    return r;
}

Report cmd_entropy(const RunConfig &cfg, const std::string &set) {
    Report r;
    r.command = "entropy";
    std::string described;
    const auto e = builtin_or_file(set, described);
    r.params = {{"set", described}};
    const auto gap = entropy_gap(e, cfg.tolerance);
    const auto fano = fano_success_bound(std::max(0.0, gap.gap), static_cast<int>(e.size()));
    r.table.push_back({"pauli", "mutual_information", "p0", "S0", "p1", "S1", "bound", "maximizer"});
    for (const auto &pe : gap.per_pauli) {
        std::array<std::string, 4> cells{"0", "", "0", ""};
        for (const auto &oe : pe.outcomes) {
            cells[static_cast<std::size_t>(2 * oe.outcome)] = to_string(oe.prob);
            cells[static_cast<std::size_t>(2 * oe.outcome + 1)] = fmt(oe.holevo(), 12);
        }
        const bool top = pe.bound >= gap.max_bound - cfg.tolerance;
        r.table.push_back({pe.pauli.str(), fmt(pe.mutual_information, 12), cells[0], cells[1], cells[2], cells[3],
                           fmt(pe.bound, 12), top ? "true" : "false"});
    }
    json maxi = json::array();
    for (const auto &p : gap.maximizers) {
        maxi.push_back(p.str());
    }
    r.data = {{"labels", e.size()},
              {"prior_entropy", gap.prior_entropy},
              {"max_bound", gap.max_bound},
              {"gap", gap.gap},
              {"fano", fano.value},
              {"fano_valid", fano.valid},
              {"maximizers", maxi},
              {"identity_excluded", gap.identity_excluded}};
    r.require(gap.gap > cfg.tolerance, "no entropy gap");
    r.require(fano.valid, "Fano bound imposes no constraint");
    r.text << "set " << described << " (" << e.size() << " labels, " << e.num_qubits() << " qubits)\n";
    r.text << "  H(prior)        " << fmt(gap.prior_entropy, 12) << '\n';
    r.text << "  max_P bound     " << fmt(gap.max_bound, 12) << "  (" << gap.maximizers.size()
           << " maximizing Paulis, identity excluded)\n";
    r.text << "  gap             " << fmt(gap.gap, 12) << '\n';
    r.text << "  Fano bound      " << fmt(fano.value, 10) << '\n';
    return r;
}

Report cmd_circuit_table() {
    Report r;
    r.command = "circuit-table";
    static const std::array<const char *, 6> expected{"010", "001", "100", "110", "011", "101"};
    r.table.push_back({"label", "input", "output", "expected", "match"});
    json rows = json::array();
    std::set<std::string> seen;
    const auto gates = readout_circuit();
    json circuit = json::array();
    for (const auto &g : gates) {
        if (const auto *cch = std::get_if<CCH>(&g)) {
            json controls = json::array();
            controls.push_back({{"qubit", cch->control1}, {"value", cch->polarity1 ? 1 : 0}});
            controls.push_back({{"qubit", cch->control2}, {"value", cch->polarity2 ? 1 : 0}});
            circuit.push_back({{"gate", "CCH"}, {"controls", controls}, {"target", cch->target}});
        }
    }
    for (std::size_t i = 0; i < 6; ++i) {
        const auto in = std::string(six_state_kets()[i]);
        const auto v = apply_gates(StateVector::from_kets(in), gates);
        const auto hit = v.as_basis_state(1e-12);
        const std::string out = hit ? basis_label(3, *hit) : "superposition";
        const bool match = out == expected[i];
        seen.insert(out);
        r.require(match, "input |" + in + "> gives " + out);
        r.table.push_back({std::to_string(i + 1), in, out, expected[i], match ? "true" : "false"});
        rows.push_back({{"label", i + 1}, {"input", in}, {"output", out}, {"match", match}});
        r.text << "  |" << in << ">  ->  |" << out << ">\n";
    }
    r.require(seen.size() == 6, "outputs are not distinct");
    r.data = {{"circuit", circuit}, {"rows", rows}};
    return r;
}

Report cmd_leave_one_out() {
    Report r;
    r.command = "leave-one-out";
    r.table.push_back({"removed", "depth", "success", "strategy"});
    json rows = json::array();
    for (int index = 1; index <= 6; ++index) {
        const auto s = leave_one_out_strategy(index);
        const auto subset = six_state_set().without({index});
        const Rational success = evaluate_strategy(subset, *s);
        r.require(success == Rational(1), "removing " + std::to_string(index) + " gives success " + to_string(success));
        r.require(s->depth() <= 3, "strategy deeper than 3 for index " + std::to_string(index));
        r.table.push_back({std::to_string(index), std::to_string(s->depth()), to_string(success), io::to_json(*s).dump()});
        rows.push_back({{"removed", index}, {"depth", s->depth()}, {"success", to_string(success)},
                        {"strategy", io::to_json(*s)}});
        r.text << "remove " << index << ": depth " << s->depth() << ", success " << to_string(success) << '\n';
    }
    r.text << "protocol for removing state 6:\n" << leave_one_out_strategy(6)->str(1);
    r.data = {{"rows", rows}};
    return r;
}

Report cmd_cspo() {
    Report r;
    r.command = "cspo-check";
    const auto rep = cspo_channel_check();
    r.require(rep.complement_identity, "1 - sum of projectors differs from |000><000| + |111><111|");
    for (const auto &f : rep.failures) {
        r.failures.push_back(f);
    }
    r.data = {{"complement_identity", rep.complement_identity},
              {"inputs", rep.inputs},
              {"kraus_operators", rep.kraus_operators},
              {"nonzero_images", rep.images_checked},
              {"note", rep.note}};
    r.text << "complement identity: " << (rep.complement_identity ? "exact" : "violated") << '\n';
    r.text << "inputs: " << rep.inputs << " pure stabilizer states, " << rep.kraus_operators << " Kraus operators, "
           << rep.images_checked << " nonzero images, all stabilizer states\n";
    r.text << "note: " << rep.note << '\n';
    return r;
}

Report cmd_data_hiding(const RunConfig &cfg, int bound_depth) {
    Report r;
    r.command = "data-hiding";
    r.params = {{"bound_depth", bound_depth}};
    const auto hiding = data_hiding_states();
    const auto gap = entropy_gap(hiding, cfg.tolerance);
    const auto fano = fano_success_bound(gap.gap, 2);
    const double ratio = data_hiding_ratio(1.0, fano.value);

    // Full quantum access: the three-gate circuit identifies every component.
    bool perfect = true;
    for (const auto &item : hiding.items()) {
        for (const auto &c : item.mixture) {
            for (int label = 1; label <= 6; ++label) {
                if (six_state_set().item(label).mixture.front().state == c.state) {
                    const int s = (label - 1) / 3;
                    perfect = perfect && s == item.label;
                }
            }
        }
    }
    const auto lower = success_probability_lower_bound(hiding, bound_depth);
    const auto mixed_gap = entropy_gap(mixed_pair(), cfg.tolerance);
    const auto mixed_fano = fano_success_bound(mixed_gap.gap, 2);

    r.require(perfect, "the circuit does not separate the two mixtures");
    r.require(ratio > 1.0, "data hiding ratio is not above 1");
    r.require(to_double(lower.value) <= fano.value + 1e-12, "achievable value exceeds the Fano bound");
    r.data = {{"gap", gap.gap},
              {"p_all", 1.0},
              {"p_stab_upper", fano.value},
              {"ratio_lower", ratio},
              {"p_stab_achievable", to_string(lower.value)},
              {"achieving_strategy", io::to_json(*lower.strategy)},
              {"mixed_pair", {{"gap", mixed_gap.gap}, {"p_stab_upper", mixed_fano.value},
                              {"ratio_lower", data_hiding_ratio(1.0, mixed_fano.value)}}}};
    r.text << "hiding pair rho_0, rho_1 (3 qubits)\n";
    r.text << "  gap " << fmt(gap.gap, 10) << ", stabilizer success < " << fmt(fano.value, 8) << ", R >= "
           << fmt(ratio, 8) << '\n';
    r.text << "  achievable with depth " << bound_depth << ": " << to_string(lower.value) << " = "
           << fmt(to_double(lower.value), 8) << '\n';
    r.text << "mixed pair (2 qubits)\n";
    r.text << "  gap " << fmt(mixed_gap.gap, 10) << ", stabilizer success < " << fmt(mixed_fano.value, 8)
           << ", R >= " << fmt(data_hiding_ratio(1.0, mixed_fano.value), 8) << '\n';
    return r;
}

Report cmd_search(const RunConfig &cfg, const std::string &set, int depth, int bound_depth) {
    Report r;
    r.command = "search";
    std::string described;
    const auto e = builtin_or_file(set, described);
    r.params = {{"set", described}, {"depth", depth}, {"bound_depth", bound_depth}};
    const auto dec = is_perfectly_discriminable(e, {depth, cfg.threads});
    r.data["verdict"] = verdict_name(dec.verdict);
    r.data["depth_searched"] = dec.depth_searched;
    r.data["nodes"] = dec.nodes;
    r.text << "set " << described << " (" << e.size() << " labels, " << e.num_qubits() << " qubits)\n";
    r.text << "perfectly discriminable: " << verdict_name(dec.verdict) << " (searched to depth " << dec.depth_searched
           << ", " << dec.nodes << " nodes)\n";
    if (dec.strategy) {
        r.data["strategy"] = io::to_json(*dec.strategy);
        r.text << dec.strategy->str(1);
    }
    if (dec.base_pair) {
        r.data["nonorthogonal_pair"] = io::to_json(*dec.base_pair);
        r.text << "  labels " << dec.base_pair->label_a << " and " << dec.base_pair->label_b << " overlap "
               << to_string(dec.base_pair->overlap) << '\n';
    }
    if (!dec.refutations.empty()) {
        json refs = json::array();
        std::size_t immediate = 0;
        for (const auto &ref : dec.refutations) {
            json jr = {{"pauli", ref.pauli.str()}, {"outcome", ref.outcome}};
            if (ref.pair) {
                jr["pair"] = io::to_json(*ref.pair);
                ++immediate;
            }
            refs.push_back(jr);
        }
        r.data["refutations"] = refs;
        r.text << "  " << immediate << "/" << dec.refutations.size()
               << " first-round Paulis leave a non-orthogonal branch immediately\n";
    }
    if (bound_depth >= 0) {
        const auto lower = success_probability_lower_bound(e, bound_depth);
        r.data["lower_bound"] = to_string(lower.value);
        r.data["lower_bound_strategy"] = io::to_json(*lower.strategy);
        r.text << "achievable success (depth " << bound_depth << "): " << to_string(lower.value) << " = "
               << fmt(to_double(lower.value), 8) << '\n';
        if (e.num_qubits() <= 6) {
            const auto gap = entropy_gap(e, cfg.tolerance);
            const auto fano = fano_success_bound(std::max(0.0, gap.gap), static_cast<int>(e.size()));
            r.data["gap"] = gap.gap;
            r.data["fano_upper_bound"] = fano.value;
            r.text << "Fano upper bound: " << fmt(fano.value, 8) << "  (gap " << fmt(gap.gap, 10) << ")\n";
            r.require(to_double(lower.value) <= fano.value + 1e-9, "lower bound exceeds the Fano bound");
        }
    }
    return r;
}

Report cmd_protocol(const RunConfig &cfg, std::size_t trials, long long successes, double p0, double alpha,
                    bool simulate_run, const std::string &prover_name, const std::string &strategy_file,
                    int bound_depth) {
    Report r;
    r.command = "protocol";
    if (p0 <= 0.0) {
        p0 = fano_success_bound(entropy_gap(six_state_set(), cfg.tolerance).gap, 6).value;
    }
    r.params = {{"N", trials}, {"p0", p0}, {"alpha", alpha}, {"simulate", simulate_run}};
    std::size_t n_succ = 0;
    if (simulate_run) {
        Prover prover = Prover::full_quantum();
        if (prover_name == "stabilizer") {
            Strategy s = strategy_file.empty() ? success_probability_lower_bound(six_state_set(), bound_depth).strategy
                                               : io::strategy_from_json(io::read_json_file(strategy_file));
            r.params["exact_success"] = to_string(evaluate_strategy(six_state_set(), *s));
            r.params["strategy"] = io::to_json(*s);
            prover = Prover::stabilizer(s);
        } else if (prover_name == "guess") {
            prover = Prover::stabilizer(StrategyNode::leaf(1), "guess");
        } else if (prover_name != "full") {
            throw PreconditionError("unknown prover " + prover_name);
        }
        r.params["prover"] = prover_name;
        r.params["seed"] = cfg.seed;
        r.params["generator"] = kGeneratorName;
        const auto records = simulate(prover, trials, cfg.seed, cfg.threads);
        n_succ = count_successes(records);
        r.table.push_back({"trial", "label", "guess", "correct"});
        for (const auto &rec : records) {
            r.table.push_back({std::to_string(rec.trial), std::to_string(rec.label), std::to_string(rec.guess),
                               rec.correct ? "1" : "0"});
        }
    } else {
        if (successes < 0) {
            throw PreconditionError("--succ is required without --simulate");
        }
        n_succ = static_cast<std::size_t>(successes);
    }
    const auto cert = binomial_certificate(trials, n_succ, p0);
    r.data = {{"N", trials},
              {"N_succ", n_succ},
              {"p0", p0},
              {"p_value", cert.p_value},
              {"confidence", cert.confidence},
              {"sigma_equiv", finite_or_null(cert.sigma_equiv)},
              {"seed", cfg.seed},
              {"generator", kGeneratorName}};
    r.require(cert.p_value <= alpha, "p-value " + fmt(cert.p_value, 6) + " above alpha " + fmt(alpha, 6));
    r.text << "N=" << trials << " N_succ=" << n_succ << " p0=" << fmt(p0, 8) << '\n';
    r.text << "  p-value " << fmt(cert.p_value, 8) << ", confidence " << fmt(100 * cert.confidence, 6)
           << "%, about " << fmt(cert.sigma_equiv, 4) << " sigma\n";
    return r;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"stabdisc: discrimination of stabilizer states with stabilizer operations"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("-o,--output", cfg.output, "Write the report to this file as well");
    app.add_option("--max-depth", cfg.max_depth, "Depth bound of the decision procedure")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "Worker threads for searches and simulation")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for simulations");
    app.add_option("--tolerance", cfg.tolerance, "Tie tolerance for entropy maximizers")->check(CLI::PositiveNumber);

    std::function<Report()> run;

    auto *t1 = app.add_subcommand("theorem1", "First-round certificate for the six-state set");
    std::size_t max_witnesses = 1;
    t1->add_option("--max-witnesses", max_witnesses, "Witnesses kept per Pauli (0 keeps all)");
    t1->callback([&] { run = [&] { return cmd_theorem1(cfg, max_witnesses); }; });

    auto *t2 = app.add_subcommand("theorem2", "Every orthogonal 1- and 2-qubit stabilizer set is discriminable");
    t2->callback([&] { run = [&] { return cmd_theorem2(cfg); }; });

    auto *t3 = app.add_subcommand("theorem3", "Block-witness certificate for the 3n-qubit family");
    std::size_t t3_n = 2;
    std::string t3_f;
    bool t3_generic = false;
    t3->add_option("--n", t3_n, "Block size")->check(CLI::Range(1, 4));
    t3->add_option("--function", t3_f, "Truth table of f, entry 0 first (default: inner product)");
    t3->add_flag("--generic", t3_generic, "Also run the generic first-round analysis for every Pauli");
    t3->callback([&] { run = [&] { return cmd_theorem3(t3_n, t3_f, t3_generic); }; });

    auto *l1 = app.add_subcommand("lemma1", "Ancilla qubits do not help");
    std::size_t ell = 1;
    l1->add_option("--l", ell, "Number of ancilla qubits")->check(CLI::Range(1, 2));
    l1->callback([&] { run = [&] { return cmd_lemma1(ell); }; });

    auto *en = app.add_subcommand("entropy", "Entropy gap and Fano bound");
    std::string en_set = "six";
    en->add_option("--set", en_set, "six, mixed, hiding, or an ensemble JSON file");
    en->callback([&] { run = [&] { return cmd_entropy(cfg, en_set); }; });

    auto *ct = app.add_subcommand("circuit-table", "Input/output table of the three-gate discrimination circuit");
    ct->callback([&] { run = [] { return cmd_circuit_table(); }; });

    auto *lo = app.add_subcommand("leave-one-out", "Perfect strategies for every five-state subset");
    lo->callback([&] { run = [] { return cmd_leave_one_out(); }; });

    auto *cs = app.add_subcommand("cspo-check", "Projector channel on the six-state set");
    cs->callback([&] { run = [] { return cmd_cspo(); }; });

    auto *dh = app.add_subcommand("data-hiding", "Data hiding ratio bounds");
    int dh_depth = 3;
    dh->add_option("--bound-depth", dh_depth, "Depth of the achievable-success search")->check(CLI::Range(0, 6));
    dh->callback([&] { run = [&] { return cmd_data_hiding(cfg, dh_depth); }; });

    auto *se = app.add_subcommand("search", "Decide discriminability and bracket the success probability");
    std::string se_set = "six";
    int se_depth = 8;
    int se_bound = 2;
    se->add_option("--set", se_set, "six, mixed, hiding, theorem3, loo1..loo6, or an ensemble JSON file");
    se->add_option("--depth", se_depth, "Depth bound of the decision procedure")->check(CLI::PositiveNumber);
    se->add_option("--bound-depth", se_bound, "Depth of the achievable-success search (-1 skips it)");
    se->callback([&] { run = [&] { return cmd_search(cfg, se_set, se_depth, se_bound); }; });

    auto *pr = app.add_subcommand("protocol", "Binomial certificate, from counts or a simulated prover");
    std::size_t pr_n = 1000;
    long long pr_succ = -1;
    double pr_p0 = 0.0;
    double pr_alpha = 0.01;
    bool pr_sim = false;
    std::string pr_prover = "full";
    std::string pr_strategy;
    int pr_depth = 3;
    pr->add_option("--N", pr_n, "Number of trials")->check(CLI::PositiveNumber);
    pr->add_option("--succ", pr_succ, "Observed successes");
    pr->add_option("--p0", pr_p0, "Null success probability (default: the Fano bound of the six-state set)");
    pr->add_option("--alpha", pr_alpha, "Largest accepted p-value");
    pr->add_flag("--simulate", pr_sim, "Simulate the prover instead of reading counts");
    pr->add_option("--prover", pr_prover, "full, stabilizer or guess")
        ->check(CLI::IsMember({"full", "stabilizer", "guess"}));
    pr->add_option("--strategy", pr_strategy, "Strategy JSON for the stabilizer prover");
    pr->add_option("--bound-depth", pr_depth, "Search depth for the default stabilizer strategy");
    pr->callback([&] {
        run = [&] {
            return cmd_protocol(cfg, pr_n, pr_succ, pr_p0, pr_alpha, pr_sim, pr_prover, pr_strategy, pr_depth);
        };
    });

    CLI11_PARSE(app, argc, argv);
    try {
        return emit(run(), cfg);
    } catch (const stabdisc::Error &err) {
        std::cerr << json({{"status", "error"}, {"error", err.what()}}).dump() << '\n';
        return 2;
    } catch (const nlohmann::json::exception &err) {
        std::cerr << json({{"status", "error"}, {"error", err.what()}}).dump() << '\n';
        return 2;
    }
}
