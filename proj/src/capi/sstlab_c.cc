#include "sstlab/sstlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "sstlab/approximants.hh"
#include "sstlab/budget.hh"
#include "sstlab/equivalence.hh"
#include "sstlab/error.hh"
#include "sstlab/format.hh"
#include "sstlab/normalize.hh"
#include "sstlab/quotient.hh"
#include "sstlab/run.hh"
#include "sstlab/schema.hh"
#include "sstlab/wordeq.hh"

using nlohmann::json;
using namespace sstlab;

struct sstlab_machine {
    SstDocument doc;
};

namespace {

thread_local std::string last_error;

sstlab_status status_of(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidArgument: return SSTLAB_E_INVALID;
    case ErrorKind::Precondition: return SSTLAB_E_PRECONDITION;
    case ErrorKind::Parse: return SSTLAB_E_PARSE;
    case ErrorKind::Budget: return SSTLAB_E_BUDGET;
    }
    return SSTLAB_E_INTERNAL;
}

template <class F>
sstlab_status guard(F&& body) {
    last_error.clear();
    try {
        return body();
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return SSTLAB_E_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return SSTLAB_E_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) { throw std::bad_alloc(); }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* p, const char* what) {
    if (!p) { fail(ErrorKind::InvalidArgument, std::string(what) + " is null"); }
}

sstlab_status emit(const json& j, char** out) {
    *out = dup_string(j.dump());
    return SSTLAB_OK;
}

sstlab_machine* wrap(SstDocument doc) { return new sstlab_machine{std::move(doc)}; }

sstlab_machine* wrap(const Sst& sst) { return wrap(SstDocument{sst, std::nullopt, {}, {}}); }

sstlab_machine* wrap(const AnnotatedSst& a) { return wrap(SstDocument{a.machine, a.alpha, a.origin, a.annotation}); }

bool flow_normalized(const Sst& sst) {
    for (const Transition& t : sst.transitions) {
        if (!is_flow_normalized(t.update)) { return false; }
    }
    return true;
}

AnnotatedSst annotate_default(const Sst& sst, std::size_t alpha) {
    const Sst n = flow_normalized(sst) ? sst : flow_normalize(sst);
    if (alpha == 0) { alpha = std::max<std::size_t>(capacity(n), 1); }
    return annotate_approximants(n, alpha);
}

/// The annotated machine, computing one when the document has none.
AnnotatedSst annotated_of(const sstlab_machine* m, bool& auto_annotated) {
    auto_annotated = !m->doc.annotated();
    return auto_annotated ? annotate_default(m->doc.machine, 0) : to_annotated(m->doc);
}

json state_names(const Sst& sst, const std::vector<StateId>& ids) {
    json out = json::array();
    for (StateId q : ids) { out.push_back(sst.states.at(q)); }
    return out;
}

json assignment_json(const std::vector<std::string>& names, const Assignment& sigma) {
    json out = json::object();
    for (std::size_t i = 0; i < names.size() && i < sigma.size(); ++i) { out[names[i]] = sigma[i]; }
    return out;
}

json transition_json(const Sst& sst, std::size_t index) {
    const Transition& t = sst.transitions.at(index);
    return {{"index", index},
            {"source", sst.states[t.source]},
            {"label", std::string(1, t.label)},
            {"target", sst.states[t.target]},
            {"update", sst.update_text(t.update)}};
}

} // namespace

extern "C" {

const char* sstlab_last_error(void) { return last_error.c_str(); }

void sstlab_string_free(char* s) { std::free(s); }

const char* sstlab_version(void) { return "0.1.0"; }

sstlab_status sstlab_machine_parse(const char* text, sstlab_machine** out) {
    return guard([&] {
        need(text, "text");
        need(out, "out");
        *out = wrap(parse_document(text));
        return SSTLAB_OK;
    });
}

void sstlab_machine_free(sstlab_machine* m) { delete m; }

int sstlab_machine_is_annotated(const sstlab_machine* m) { return m && m->doc.annotated() ? 1 : 0; }

sstlab_status sstlab_machine_serialize(const sstlab_machine* m, char** text) {
    return guard([&] {
        need(m, "machine");
        need(text, "text");
        *text = dup_string(m->doc.annotated() ? serialize_annotated(to_annotated(m->doc)) : serialize_sst(m->doc.machine));
        return SSTLAB_OK;
    });
}

sstlab_status sstlab_machine_info(const sstlab_machine* m, char** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "json");
        const Sst& sst = m->doc.machine;
        json states = json::array();
        for (StateId q = 0; q < sst.num_states(); ++q) {
            json s = {{"name", sst.states[q]}, {"initial", sst.initial[q] != 0}, {"final", sst.final[q] != 0}};
            if (m->doc.annotated()) { s["origin"] = m->doc.origin.at(q); }
            states.push_back(std::move(s));
        }
        json transitions = json::array();
        for (std::size_t i = 0; i < sst.transitions.size(); ++i) { transitions.push_back(transition_json(sst, i)); }
        json j = {{"input_alphabet", sst.input_alphabet},
                  {"output_alphabet", sst.output_alphabet},
                  {"registers", sst.registers},
                  {"output_register", sst.registers.at(sst.output_register)},
                  {"states", std::move(states)},
                  {"transitions", std::move(transitions)},
                  {"capacity", capacity(sst)},
                  {"edge_ambiguity", edge_ambiguity(sst)},
                  {"annotated", m->doc.annotated()}};
        if (m->doc.annotated()) { j["alpha"] = *m->doc.alpha; }
        return emit(j, out);
    });
}

sstlab_status sstlab_validate(const sstlab_machine* m, char** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "json");
        json diags = json::array();
        bool ok = true;
        for (const Diagnostic& d : validate(m->doc.machine)) {
            const bool error = d.severity == Diagnostic::Severity::Error;
            ok = ok && !error;
            diags.push_back({{"severity", error ? "error" : "warning"}, {"location", d.location}, {"message", d.message}});
        }
        emit({{"valid", ok}, {"diagnostics", std::move(diags)}}, out);
        return ok ? SSTLAB_OK : SSTLAB_FALSE;
    });
}

sstlab_status sstlab_eval(const sstlab_machine* m, const char* input, char** out) {
    return guard([&] {
        need(m, "machine");
        need(input, "input");
        need(out, "json");
        const Sst& sst = m->doc.machine;
        return emit({{"input", input}, {"outputs", eval(sst, input)}, {"runs", count_runs(sst, input)}}, out);
    });
}

sstlab_status sstlab_kvalued(const sstlab_machine* m, size_t k, size_t max_len, char** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "json");
        const KValuedVerdict v = is_k_valued_bounded(m->doc.machine, k, max_len);
        json j = {{"k", k}, {"max_len", max_len}, {"holds", v.holds}};
        if (v.witness) {
            j["witness"] = *v.witness;
            j["outputs"] = v.outputs;
        }
        emit(j, out);
        return v.holds ? SSTLAB_OK : SSTLAB_FALSE;
    });
}

sstlab_status sstlab_equiv_bounded(const sstlab_machine* a, const sstlab_machine* b, size_t max_len, char** out) {
    return guard([&] {
        need(a, "first machine");
        need(b, "second machine");
        need(out, "json");
        const EquivVerdict v = equiv_bounded(a->doc.machine, b->doc.machine, max_len);
        json j = {{"max_len", max_len}, {"equivalent", v.equivalent}};
        if (v.witness) {
            j["witness"] = *v.witness;
            j["outputs1"] = v.outputs1;
            j["outputs2"] = v.outputs2;
        }
        emit(j, out);
        return v.equivalent ? SSTLAB_OK : SSTLAB_FALSE;
    });
}

sstlab_status sstlab_trim(const sstlab_machine* m, sstlab_machine** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "out");
        *out = m->doc.annotated() ? wrap(trim(to_annotated(m->doc))) : wrap(trim(m->doc.machine));
        return SSTLAB_OK;
    });
}

sstlab_status sstlab_normalize(const sstlab_machine* m, sstlab_machine** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "out");
        *out = wrap(flow_normalize(m->doc.machine));
        return SSTLAB_OK;
    });
}

sstlab_status sstlab_annotate(const sstlab_machine* m, size_t alpha, sstlab_machine** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "out");
        *out = wrap(annotate_default(m->doc.machine, alpha));
        return SSTLAB_OK;
    });
}

sstlab_status sstlab_tightness(const sstlab_machine* m, size_t beta, size_t max_len, size_t max_pump, char** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "json");
        const AnnotatedSst a = to_annotated(m->doc);
        const TightnessReport r = probe_tightness(a, beta, max_len, max_pump);
        return emit({{"alpha", a.alpha},
                     {"beta", beta},
                     {"max_len", max_len},
                     {"max_pump", max_pump},
                     {"states_seen", r.states_seen},
                     {"states_tight", r.states_tight},
                     {"unresolved", state_names(a.machine, r.unresolved)}},
                    out);
    });
}

sstlab_status sstlab_admits_check(const sstlab_machine* m, size_t alpha, size_t max_len, char** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "json");
        bool auto_annotated = false;
        const AnnotatedSst a = annotated_of(m, auto_annotated);
        if (alpha == 0) { alpha = a.alpha; }
        const AdmitsVerdict v = check_admits(a, alpha, max_len);
        json j = {{"alpha", alpha}, {"max_len", max_len}, {"holds", v.holds}, {"auto_annotated", auto_annotated}};
        if (!v.holds) {
            j["violation"] = {{"input", v.input},       {"run", v.run_index},         {"position", v.position},
                              {"variable", v.variable}, {"expected", v.expected},     {"actual", v.actual}};
        }
        emit(j, out);
        return v.holds ? SSTLAB_OK : SSTLAB_FALSE;
    });
}

sstlab_status sstlab_prune(const sstlab_machine* m, sstlab_machine** out, int* auto_annotated) {
    return guard([&] {
        need(m, "machine");
        need(out, "out");
        bool fresh = false;
        const AnnotatedSst a = annotated_of(m, fresh);
        *out = wrap(prune_edges(a));
        if (auto_annotated) { *auto_annotated = fresh ? 1 : 0; }
        return SSTLAB_OK;
    });
}

sstlab_status sstlab_tequiv(const sstlab_machine* m, size_t t1, size_t t2, size_t oracle_len, char** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "json");
        bool auto_annotated = false;
        const AnnotatedSst a = annotated_of(m, auto_annotated);
        const Sst& sst = a.machine;
        if (t1 >= sst.transitions.size() || t2 >= sst.transitions.size()) {
            fail(ErrorKind::InvalidArgument, "transition index out of range (machine has " +
                                                 std::to_string(sst.transitions.size()) + " transitions)");
        }
        const Transition& x = sst.transitions[t1];
        const Transition& y = sst.transitions[t2];
        if (x.source != y.source || x.target != y.target) {
            fail(ErrorKind::Precondition, "tequiv: transitions do not share source and target");
        }
        const bool equal = transitions_equiv(x, y, a.annotation.at(x.source).regs, a.annotation.at(x.target).gaps);
        json j = {{"t1", transition_json(sst, t1)},
                  {"t2", transition_json(sst, t2)},
                  {"equivalent", equal},
                  {"auto_annotated", auto_annotated}};
        if (oracle_len > 0) {
            const OracleVerdict o = transitions_equiv_oracle(sst, t1, t2, oracle_len);
            json oj = {{"max_len", oracle_len}, {"equivalent", o.equivalent}, {"contexts", o.contexts}, {"witnesses", o.witnesses}};
            if (o.witness) {
                oj["witness"] = {{"input", o.witness->input}, {"output1", o.witness->output1}, {"output2", o.witness->output2}};
            }
            j["oracle"] = std::move(oj);
        }
        emit(j, out);
        return equal ? SSTLAB_OK : SSTLAB_FALSE;
    });
}

sstlab_status sstlab_quotient(const sstlab_machine* m, const char* word, int trim_result, sstlab_machine** out) {
    return guard([&] {
        need(m, "machine");
        need(word, "word");
        need(out, "out");
        *out = m->doc.annotated() ? wrap(quotient_word(to_annotated(m->doc), word, trim_result != 0))
                                  : wrap(quotient_word(m->doc.machine, word, trim_result != 0));
        return SSTLAB_OK;
    });
}

sstlab_status sstlab_schema(const sstlab_machine* m, const char* prefix, char** out) {
    return guard([&] {
        need(m, "machine");
        need(out, "json");
        const Schema s = schema_of(m->doc.machine, prefix ? prefix : "U");
        json unknowns = json::array();
        for (std::size_t i = 0; i < s.phi.size(); ++i) { unknowns.push_back({{"name", s.unknown_names[i]}, {"value", s.phi[i]}}); }
        const bool round_trip = serialize_sst(concretize(s)) == serialize_sst(m->doc.machine);
        return emit({{"unknowns", std::move(unknowns)}, {"text", schema_text(s)}, {"round_trip", round_trip}}, out);
    });
}

sstlab_status sstlab_weq_solve(const char* text, sstlab_weq_method method, size_t bound, size_t depth, char** out) {
    return guard([&] {
        need(text, "text");
        need(out, "json");
        const EqSystem sys = parse_system(text);
        Budget budget = Budget::from_env();
        if (method == SSTLAB_WEQ_BOUNDED) {
            const auto sigma = solve_bounded(sys, bound, budget);
            json j = {{"method", "bounded"}, {"bound", bound}, {"status", sigma ? "sat" : "none"}};
            if (sigma) { j["witness"] = assignment_json(sys.unknowns, *sigma); }
            emit(j, out);
            return sigma ? SSTLAB_OK : SSTLAB_FALSE;
        }
        Conjunction conj;
        for (const Clause& c : sys.clauses) {
            if (c.disjuncts.size() != 1) { fail(ErrorKind::InvalidArgument, "the Nielsen solver needs a conjunction of equations"); }
            conj.insert(conj.end(), c.disjuncts[0].begin(), c.disjuncts[0].end());
        }
        const NielsenResult r = solve_nielsen(conj, sys.unknowns.size(), depth, budget);
        const char* status = r.status == SolveStatus::Sat ? "sat" : r.status == SolveStatus::Unsat ? "unsat" : "unknown";
        json j = {{"method", "nielsen"}, {"depth", depth}, {"status", status}, {"states", r.states}};
        if (r.witness) { j["witness"] = assignment_json(sys.unknowns, *r.witness); }
        emit(j, out);
        switch (r.status) {
        case SolveStatus::Sat: return SSTLAB_OK;
        case SolveStatus::Unsat: return SSTLAB_FALSE;
        case SolveStatus::Unknown: break;
        }
        last_error = "Nielsen search inconclusive within depth " + std::to_string(depth);
        return SSTLAB_E_BUDGET;
    });
}

sstlab_status sstlab_testset(const sstlab_machine* a, const sstlab_machine* b, size_t k, size_t n, size_t bound, char** out) {
    return guard([&] {
        need(a, "first machine");
        need(out, "json");
        const Schema s1 = schema_of(a->doc.machine, "U");
        const Schema s2 = b ? schema_of(b->doc.machine, "V") : s1;
        Budget budget = Budget::from_env();
        const FixpointResult r = testset_fixpoint(s1, s2, k, n, bound, budget);
        const char* status = r.status == FixpointStatus::Fixpoint      ? "fixpoint"
                             : r.status == FixpointStatus::NotFixpoint ? "not-fixpoint"
                                                                       : "unknown";
        json j = {{"k", k},
                  {"n", n},
                  {"bound", bound},
                  {"shared_unknowns", b == nullptr},
                  {"status", status},
                  {"assignments", r.assignments},
                  {"clauses", r.system.clauses.size()},
                  {"unknowns", r.system.unknowns}};
        if (r.witness) {
            j["witness"] = assignment_json(r.system.unknowns, *r.witness);
            j["input"] = r.input.value_or("");
        }
        emit(j, out);
        switch (r.status) {
        case FixpointStatus::Fixpoint: return SSTLAB_OK;
        case FixpointStatus::NotFixpoint: return SSTLAB_FALSE;
        case FixpointStatus::Unknown: break;
        }
        last_error = "test-set check ran out of budget";
        return SSTLAB_E_BUDGET;
    });
}

} // extern "C"
