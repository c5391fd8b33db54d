#include <doctest.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sstlab/sstlab.h"

using json = nlohmann::json;

namespace {

struct MachineDeleter {
    void operator()(sstlab_machine* m) const { sstlab_machine_free(m); }
};
using Machine = std::unique_ptr<sstlab_machine, MachineDeleter>;

std::string corpus_text(const std::string& name) {
    std::ifstream in(std::string(SSTLAB_CORPUS_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Machine load(const std::string& name) {
    sstlab_machine* m = nullptr;
    REQUIRE(sstlab_machine_parse(corpus_text(name).c_str(), &m) == SSTLAB_OK);
    return Machine(m);
}

/// Takes ownership of a library string.
std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    sstlab_string_free(s);
    return out;
}

json take_json(char* s) { return json::parse(take(s)); }

} // namespace

TEST_CASE("parse errors") {
    sstlab_machine* m = nullptr;
    CHECK(sstlab_machine_parse("alphabet input: a $;", &m) == SSTLAB_E_PARSE);
    CHECK(m == nullptr);
    CHECK(std::string(sstlab_last_error()).find("missing") != std::string::npos);
    CHECK(sstlab_machine_parse(nullptr, &m) == SSTLAB_E_INVALID);
    CHECK(std::string(sstlab_version()).size() > 0);
    sstlab_machine_free(nullptr);
    sstlab_string_free(nullptr);
}

TEST_CASE("serialize, info and validate") {
    const Machine dup = load("dup.sst");
    char* text = nullptr;
    REQUIRE(sstlab_machine_serialize(dup.get(), &text) == SSTLAB_OK);
    const std::string s = take(text);
    sstlab_machine* again = nullptr;
    REQUIRE(sstlab_machine_parse(s.c_str(), &again) == SSTLAB_OK);
    const Machine owned(again);
    char* t2 = nullptr;
    REQUIRE(sstlab_machine_serialize(again, &t2) == SSTLAB_OK);
    CHECK(take(t2) == s);

    char* js = nullptr;
    REQUIRE(sstlab_machine_info(dup.get(), &js) == SSTLAB_OK);
    const json info = take_json(js);
    CHECK(info["capacity"] == 2);
    CHECK(info["registers"] == json::array({"x1", "x2"}));
    CHECK(info["transitions"].size() == 2);
    CHECK(info["annotated"] == false);

    REQUIRE(sstlab_validate(dup.get(), &js) == SSTLAB_OK);
    CHECK(take_json(js)["valid"] == true);
    CHECK(sstlab_machine_is_annotated(dup.get()) == 0);
}

TEST_CASE("eval, kvalued and equiv") {
    const Machine dup = load("dup.sst"), tab = load("tab.sst");
    char* js = nullptr;
    REQUIRE(sstlab_eval(dup.get(), "aa$", &js) == SSTLAB_OK);
    CHECK(take_json(js)["outputs"] == json::array({"aaaa"}));
    CHECK(sstlab_eval(dup.get(), "aa", &js) == SSTLAB_E_INVALID);
    CHECK(std::string(sstlab_last_error()).size() > 0);

    REQUIRE(sstlab_kvalued(tab.get(), 1, 4, &js) == SSTLAB_FALSE);
    const json kv = take_json(js);
    CHECK(kv["witness"] == "a$");
    CHECK(kv["outputs"] == json::array({"a", "b"}));
    REQUIRE(sstlab_kvalued(tab.get(), 2, 4, &js) == SSTLAB_OK);
    take(js);

    REQUIRE(sstlab_equiv_bounded(dup.get(), dup.get(), 5, &js) == SSTLAB_OK);
    CHECK(take_json(js)["equivalent"] == true);
    REQUIRE(sstlab_equiv_bounded(dup.get(), tab.get(), 3, &js) == SSTLAB_FALSE);
    CHECK(take_json(js)["witness"] == "a$");
}

TEST_CASE("pipeline through handles") {
    const Machine g = load("flow_g.sst");
    sstlab_machine *n = nullptr, *a = nullptr, *p = nullptr, *q = nullptr, *t = nullptr;
    REQUIRE(sstlab_normalize(g.get(), &n) == SSTLAB_OK);
    const Machine norm(n);
    CHECK(sstlab_annotate(g.get(), 1, &a) == SSTLAB_OK);  // normalizes first
    const Machine ann(a);
    CHECK(sstlab_machine_is_annotated(a) == 1);
    char* js = nullptr;
    REQUIRE(sstlab_admits_check(a, 0, 5, &js) == SSTLAB_OK);
    CHECK(take_json(js)["holds"] == true);
    int auto_annotated = -1;
    REQUIRE(sstlab_prune(a, &p, &auto_annotated) == SSTLAB_OK);
    const Machine pruned(p);
    CHECK(auto_annotated == 0);
    REQUIRE(sstlab_quotient(n, "ab", 1, &q) == SSTLAB_OK);
    const Machine quot(q);
    REQUIRE(sstlab_trim(q, &t) == SSTLAB_OK);
    const Machine trimmed(t);
    for (const char* v : {"$", "a$", "ba$", "bb$"}) {
        char* e1 = nullptr;
        char* e2 = nullptr;
        REQUIRE(sstlab_eval(q, v, &e1) == SSTLAB_OK);
        REQUIRE(sstlab_eval(g.get(), (std::string("ab") + v).c_str(), &e2) == SSTLAB_OK);
        CHECK(take_json(e1)["outputs"] == take_json(e2)["outputs"]);
    }
    CHECK(sstlab_quotient(n, "a$", 0, &q) == SSTLAB_E_INVALID);
    CHECK(sstlab_annotate(nullptr, 1, &a) == SSTLAB_E_INVALID);
}

TEST_CASE("tequiv reports the verdict and the oracle") {
    const Machine shift = load("shift.sst");
    sstlab_machine* a = nullptr;
    REQUIRE(sstlab_annotate(shift.get(), 0, &a) == SSTLAB_OK);
    const Machine ann(a);
    char* js = nullptr;
    REQUIRE(sstlab_machine_info(a, &js) == SSTLAB_OK);
    const json info = take_json(js);
    // Find two parallel transitions.
    std::size_t t1 = 0, t2 = 0;
    bool found = false;
    const auto& ts = info["transitions"];
    for (std::size_t i = 0; i < ts.size() && !found; ++i) {
        for (std::size_t j = i + 1; j < ts.size() && !found; ++j) {
            if (ts[i]["source"] == ts[j]["source"] && ts[i]["target"] == ts[j]["target"] && ts[i]["label"] == ts[j]["label"]) {
                t1 = i;
                t2 = j;
                found = true;
            }
        }
    }
    REQUIRE(found);
    const sstlab_status st = sstlab_tequiv(a, t1, t2, 5, &js);
    const json r = take_json(js);
    CHECK(st == SSTLAB_OK);
    CHECK(r["equivalent"] == true);
    CHECK(r["oracle"]["equivalent"] == r["equivalent"]);
    CHECK(sstlab_tequiv(a, 0, 9999, 5, &js) == SSTLAB_E_INVALID);
}

TEST_CASE("schemas, equations and test sets") {
    const Machine dup = load("dup.sst");
    char* js = nullptr;
    REQUIRE(sstlab_schema(dup.get(), "U", &js) == SSTLAB_OK);
    const json s = take_json(js);
    CHECK(s["unknowns"].size() == 2);
    CHECK(s["round_trip"] == true);
    CHECK(sstlab_schema(dup.get(), "bad", &js) == SSTLAB_E_INVALID);

    REQUIRE(sstlab_weq_solve("X a = a X\n", SSTLAB_WEQ_BOUNDED, 2, 0, &js) == SSTLAB_OK);
    const json w = take_json(js);
    CHECK(w["status"] == "sat");
    CHECK(w["witness"]["X"] == "");
    REQUIRE(sstlab_weq_solve("a X = b X\n", SSTLAB_WEQ_NIELSEN, 0, 64, &js) == SSTLAB_FALSE);
    CHECK(take_json(js)["status"] == "unsat");
    CHECK(sstlab_weq_solve("X = = a\n", SSTLAB_WEQ_BOUNDED, 2, 0, &js) == SSTLAB_E_PARSE);
    CHECK(sstlab_weq_solve("X = a\n| X = b\n", SSTLAB_WEQ_NIELSEN, 0, 8, &js) == SSTLAB_E_INVALID);

    REQUIRE(sstlab_testset(dup.get(), nullptr, 1, 1, 2, &js) == SSTLAB_OK);
    CHECK(take_json(js)["status"] == "fixpoint");
}
