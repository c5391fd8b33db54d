#include <doctest.h>

#include <algorithm>
#include <map>

#include "sstlab/equivalence.hh"
#include "sstlab/error.hh"
#include "sstlab/format.hh"
#include "sstlab/normalize.hh"
#include "support.hh"

using namespace sstlab;
using testing::sw;
using testing::upd;
using L = ApproxLang;

namespace {

// x1 collects a-letters, or any letters with `loop_b`, then one of two parallel b-steps.
Sst parallel(bool loop_b, const std::string& second) {
    std::string text = "alphabet input: a b c $;\nalphabet output: a b;\nregisters: x1;\noutput: x1;\n"
                       "state q0 initial;\nstate q1;\nstate qf final;\n"
                       "trans q0 -> q0 on a { x1 := x1 a; }\n"
                       "trans q0 -> q1 on c { x1 := a x1; }\n"
                       "trans q0 -> q1 on c { x1 := " + second + "; }\n"
                       "trans q1 -> qf on $ { x1 := x1; }\n";
    if (loop_b) { text += "trans q0 -> q0 on b { x1 := x1 b; }\n"; }
    return parse_sst(text);
}

std::pair<std::size_t, std::size_t> parallel_pair(const Sst& sst) {
    std::vector<std::size_t> found;
    for (std::size_t i = 0; i < sst.transitions.size(); ++i) {
        if (sst.transitions[i].label == 'c') { found.push_back(i); }
    }
    REQUIRE(found.size() == 2);
    return {found[0], found[1]};
}

} // namespace

TEST_CASE("eff words") {
    CHECK(eff(upd({"a x1 b x2 c", "d"})) == sw("y0 a x1 b x2 c y1 d y2"));
    CHECK(eff(Update::identity(1)) == sw("y0 x1 y1"));
    CHECK_THROWS_AS(eff(upd({""})), Error);
    CHECK_THROWS_AS(eff(upd({"x2 x1", ""})), Error);
}

TEST_CASE("eff is injective on normalized updates") {
    std::mt19937_64 rng(4);
    std::map<SymWord, Update> seen;
    for (int i = 0; i < 3000; ++i) {
        const Update f = testing::random_update(rng, 1 + i % 3, 2, "ab");
        if (!is_flow_normalized(f)) { continue; }
        const auto [it, inserted] = seen.emplace(eff(f), f);
        if (!inserted) { CHECK(it->second == f); }
    }
    CHECK(seen.size() > 50);
}

TEST_CASE("eff equations under approximants") {
    const std::vector<L> eps_gaps{L::singleton(""), L::singleton("")};
    const Transition t1{0, 'a', upd({"a x1"}), 1}, t2{0, 'a', upd({"x1 a"}), 1};
    CHECK(transitions_equiv(t1, t1, {L::universal()}, eps_gaps));
    CHECK(transitions_equiv(t1, t2, {L::periodic("a", "")}, eps_gaps));
    CHECK_FALSE(transitions_equiv(t1, t2, {L::universal()}, eps_gaps));
    CHECK_FALSE(transitions_equiv(t1, t2, {L::singleton("b")}, eps_gaps));
    CHECK(transitions_equiv(t1, t2, {L::singleton("aaa")}, eps_gaps));
    // Gaps take part: y1 = b breaks a x1 y1 = x1 a y1 only through x1.
    CHECK(transitions_equiv(t1, t2, {L::periodic("a", "")}, {L::singleton(""), L::singleton("b")}));
    // An offset into a periodic gap: a y0 x1 = y0 a x1 holds when y0 ∈ a*.
    const Transition g1{0, 'a', upd({"x1"}), 1};
    CHECK(eff_words_equal_under(sw("a y0 x1 y1"), sw("y0 a x1 y1"), {L::universal()},
                                {L::periodic("a", ""), L::singleton("")}));
    CHECK_FALSE(eff_words_equal_under(sw("a y0 x1 y1"), sw("y0 a x1 y1"), {L::universal()},
                                      {L::periodic("ab", ""), L::singleton("")}));
    // Empty approximants: vacuous.
    CHECK(transitions_equiv(t1, t2, {L::empty()}, eps_gaps));
    CHECK_THROWS_AS(transitions_equiv(t1, Transition{0, 'b', upd({"x1 a"}), 1}, {L::universal()}, eps_gaps), Error);
    CHECK_THROWS_AS(transitions_equiv(g1, Transition{0, 'a', upd({""}), 1}, {L::universal()}, eps_gaps), Error);
}

TEST_CASE("eff equations against brute-force valuations") {
    // Random same-flow pairs over one or two registers; compare with every valuation whose
    // members have length ≤ 6.
    std::mt19937_64 rng(31);
    std::vector<L> langs{L::singleton(""), L::singleton("a"), L::singleton("ab"), L::singleton("ba"),
                         L::periodic("a", ""), L::periodic("ab", ""), L::periodic("ab", "a"), L::periodic("b", ""),
                         L::universal()};
    std::size_t agree_true = 0, agree_false = 0;
    for (int trial = 0; trial < 2500; ++trial) {
        const std::size_t m = 1 + trial % 2;
        const Update f1 = testing::random_update(rng, m, 2, "ab");
        const Update f2 = testing::random_update(rng, m, 2, "ab");
        if (!is_flow_normalized(f1) || flow_of(f1) != flow_of(f2)) { continue; }
        std::vector<L> regs(m, L::empty()), gaps(m + 1, L::empty());
        for (auto& l : regs) { l = langs[rng() % langs.size()]; }
        for (auto& l : gaps) { l = langs[rng() % (langs.size() - 1)]; }
        const bool verdict = transitions_equiv({0, 'a', f1, 0}, {0, 'a', f2, 0}, regs, gaps);
        // Brute force: substitute all member combinations.
        std::vector<std::vector<std::string>> choices;
        for (const L& l : regs) { choices.push_back(members_upto(l, 4, "ab")); }
        for (const L& l : gaps) { choices.push_back(members_upto(l, 4, "ab")); }
        const SymWord e1 = eff(f1), e2 = eff(f2);
        bool all_equal = true;
        std::vector<std::size_t> idx(choices.size(), 0);
        bool any = std::all_of(choices.begin(), choices.end(), [](const auto& c) { return !c.empty(); });
        while (any && all_equal) {
            auto value = [&](const SymWord& w) {
                std::string out;
                for (const Sym& s : w) {
                    if (s.is_reg()) { out += choices[s.index()][idx[s.index()]]; }
                    else if (s.is_gap()) { out += choices[m + s.index()][idx[m + s.index()]]; }
                    else { out += s.as_letter(); }
                }
                return out;
            };
            all_equal = value(e1) == value(e2);
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == choices[k].size()) { idx[k++] = 0; }
            if (k == idx.size()) { break; }
        }
        CHECK(verdict == all_equal);
        (verdict ? agree_true : agree_false) += 1;
    }
    CHECK(agree_true > 20);
    CHECK(agree_false > 20);
}

TEST_CASE("oracle on parallel transitions") {
    const Sst same = parallel(false, "x1 a");
    const auto [i1, i2] = parallel_pair(same);
    CHECK(transitions_equiv_oracle(same, i1, i1, 5).equivalent);
    const OracleVerdict ok = transitions_equiv_oracle(same, i1, i2, 6);
    CHECK(ok.equivalent);
    CHECK(ok.contexts == 6);

    const Sst diff = parallel(true, "x1 a");
    const auto [j1, j2] = parallel_pair(diff);
    const OracleVerdict bad = transitions_equiv_oracle(diff, j1, j2, 3);
    CHECK_FALSE(bad.equivalent);
    REQUIRE(bad.witness);
    const std::string& in = bad.witness->input;
    CHECK(in.size() <= 4);
    CHECK(in.find('b') != std::string::npos);
    CHECK(bad.witness->output1 != bad.witness->output2);
    CHECK(eval(diff, in).size() == 2);
    // Contexts where x1 ∈ a* agree, so not every context is a witness here.
    CHECK(bad.witnesses < bad.contexts);
}

TEST_CASE("verdict and oracle on annotated parallel transitions") {
    for (const bool loop_b : {false, true}) {
        for (const std::string second : {"x1 a", "a x1", "x1 b", "b x1"}) {
            const Sst sst = flow_normalize(parallel(loop_b, second));
            const AnnotatedSst a = annotate_approximants(sst, capacity(sst));
            for (std::size_t i = 0; i < a.machine.transitions.size(); ++i) {
                for (std::size_t j = i + 1; j < a.machine.transitions.size(); ++j) {
                    const Transition& t1 = a.machine.transitions[i];
                    const Transition& t2 = a.machine.transitions[j];
                    if (t1.source != t2.source || t1.target != t2.target || t1.label != t2.label) { continue; }
                    const bool v = transitions_equiv(t1, t2, a.annotation[t1.source].regs, a.annotation[t2.target].gaps);
                    const OracleVerdict o = transitions_equiv_oracle(a.machine, i, j, 7);
                    CHECK(v == o.equivalent);
                    if (!v) { CHECK(o.witnesses == o.contexts); }
                }
            }
        }
    }
}

TEST_CASE("edge ambiguity and pruning") {
    CHECK(edge_ambiguity(testing::load_corpus("dup.sst")) == 1);
    CHECK(edge_ambiguity(testing::load_corpus("tab.sst")) == 2);
    CHECK(edge_ambiguity(Sst{}) == 0);
    CHECK(edge_ambiguity_bound(2, 3) == 16);

    // Ten ways of adding two a's per step; deep in the loop every value is a*, so the copies
    // become parallel in the annotation and all of them are equivalent.
    std::string text = "alphabet input: a $;\nalphabet output: a;\nregisters: x1 x2;\noutput: x1;\n"
                       "state q0 initial;\nstate qf final;\ntrans q0 -> qf on $ { x1 := x1 x2; x2 := ; }\n";
    for (int i = 0; i <= 2; ++i) {
        for (int j = 0; i + j <= 2; ++j) {
            for (int k = 0; i + j + k <= 2; ++k) {
                const int l = 2 - i - j - k;
                auto as = [](int n) { return std::string(n > 0 ? " " : "") + (n == 2 ? "a a" : n == 1 ? "a" : ""); };
                text += "trans q0 -> q0 on a { x1 :=" + as(i) + " x1" + as(j) + "; x2 :=" + as(k) + " x2" + as(l) + "; }\n";
            }
        }
    }
    const Sst pile = flow_normalize(parse_sst(text));
    REQUIRE(pile.transitions.size() == 11);
    const AnnotatedSst a = annotate_approximants(pile, capacity(pile));
    CHECK(edge_ambiguity(a.machine) == 10);
    const AnnotatedSst p = prune_edges(a);
    CHECK(edge_ambiguity(p.machine) <= edge_ambiguity_bound(1, 2));
    CHECK(edge_ambiguity(p.machine) == 1);
    for (const std::string& u : well_formed_inputs(pile.input_alphabet, 7)) {
        CHECK(eval(p.machine, u) == eval(pile, u));
        CHECK(eval(p.machine, u) == std::vector<std::string>{std::string(2 * (u.size() - 1), 'a')});
    }
    CHECK(prune_edges(p).machine == p.machine);

    // Without parallel edges nothing changes.
    const AnnotatedSst dup = annotate_approximants(flow_normalize(testing::load_corpus("dup.sst")), 2);
    CHECK(prune_edges(dup).machine == dup.machine);

    // Inequivalent copies over {a, b}* are kept.
    const Sst kept = flow_normalize(parallel(true, "x1 a"));
    const AnnotatedSst ka = annotate_approximants(kept, 1);
    const AnnotatedSst kp = prune_edges(ka);
    CHECK(kp.machine.transitions.size() <= ka.machine.transitions.size());
    for (const std::string& u : well_formed_inputs(kept.input_alphabet, 5)) { CHECK(eval(kp.machine, u) == eval(kept, u)); }
}

TEST_CASE("tab: the two marker steps differ on every context") {
    const Sst sst = flow_normalize(testing::load_corpus("tab.sst"));
    const AnnotatedSst a = annotate_approximants(sst, capacity(sst));
    for (std::size_t i = 0; i < a.machine.transitions.size(); ++i) {
        for (std::size_t j = i + 1; j < a.machine.transitions.size(); ++j) {
            const Transition& t1 = a.machine.transitions[i];
            const Transition& t2 = a.machine.transitions[j];
            if (t1.source != t2.source || t1.target != t2.target || t1.label != t2.label ||
                flow_of(t1.update) != flow_of(t2.update)) {
                continue;
            }
            const OracleVerdict o = transitions_equiv_oracle(a.machine, i, j, 6);
            CHECK(transitions_equiv(t1, t2, a.annotation[t1.source].regs, a.annotation[t1.target].gaps) == o.equivalent);
        }
    }
}
