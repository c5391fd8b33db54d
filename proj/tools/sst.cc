// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sstlab/sstlab.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Failure {
    int code;
    std::string message;
};

int exit_code(sstlab_status s) {
    switch (s) {
    case SSTLAB_OK: return kExitOk;
    case SSTLAB_FALSE: return kExitFalse;
    case SSTLAB_E_BUDGET: return kExitBudget;
    default: return kExitUsage;
    }
}

/// Throws unless the status carries a result.
void check(sstlab_status s) {
    if (s == SSTLAB_OK || s == SSTLAB_FALSE) { return; }
    throw Failure{exit_code(s), sstlab_last_error()};
}

using Machine = std::unique_ptr<sstlab_machine, decltype(&sstlab_machine_free)>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw Failure{kExitUsage, "cannot read " + path}; }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Machine load(const std::string& path) {
    sstlab_machine* m = nullptr;
    const sstlab_status s = sstlab_machine_parse(read_file(path).c_str(), &m);
    if (s != SSTLAB_OK) { throw Failure{exit_code(s), path + ":" + sstlab_last_error()}; }
    return {m, &sstlab_machine_free};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    sstlab_string_free(s);
    return out;
}

/// Calls a report function and returns its status and parsed report.
template <class F>
std::pair<sstlab_status, json> report(F&& call) {
    char* out = nullptr;
    const sstlab_status s = call(&out);
    check(s);
    return {s, json::parse(take(out))};
}

std::string text_of(const sstlab_machine* m) {
    char* out = nullptr;
    check(sstlab_machine_serialize(m, &out));
    return take(out);
}

std::string quoted(const std::string& w) { return w.empty() ? "\"\"" : w; }

struct Options {
    bool json{false};
};

int print_machine(const Options& o, const sstlab_machine* m, json extra = json::object()) {
    if (o.json) {
        extra["machine"] = text_of(m);
        std::cout << extra.dump(2) << "\n";
    } else {
        std::cout << text_of(m);
    }
    return kExitOk;
}

int finish(const Options& o, sstlab_status s, const json& j, const std::string& human) {
    if (o.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << human;
    }
    return exit_code(s);
}

std::string words(const json& list) {
    std::string out;
    for (const auto& w : list) { out += (out.empty() ? "" : " ") + quoted(w.get<std::string>()); }
    return "{" + out + "}";
}

std::string assignment(const json& a) {
    std::string out;
    for (const auto& [name, value] : a.items()) { out += "  " + name + " = " + quoted(value.get<std::string>()) + "\n"; }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sst: copyless streaming string transducers"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.json, "structured output");

    std::string file, file2, input, word, prefix = "U";
    std::size_t alpha = 0, len = 7, k = 1, n = 1, bound = 2, depth = 64, pump = 3, oracle = 0;
    std::size_t tight_alpha = 0, t1 = 0, t2 = 0;
    std::optional<std::size_t> bounded;
    bool nielsen = false, trim_result = false;

    auto* c_check = app.add_subcommand("check", "parse and validate a machine");
    c_check->add_option("file", file)->required();

    auto* c_info = app.add_subcommand("info", "states, registers and indexed transitions");
    c_info->add_option("file", file)->required();

    auto* c_eval = app.add_subcommand("eval", "outputs on an input word ending with $");
    c_eval->add_option("file", file)->required();
    c_eval->add_option("input", input)->required();

    auto* c_trim = app.add_subcommand("trim", "remove useless states");
    c_trim->add_option("file", file)->required();

    auto* c_norm = app.add_subcommand("normalize", "flow-normalize");
    c_norm->add_option("file", file)->required();

    auto* c_ann = app.add_subcommand("annotate", "annotate states with approximants");
    c_ann->add_option("file", file)->required();
    c_ann->add_option("--alpha", alpha, "lattice parameter (default: capacity)");
    c_ann->add_option("--tight-alpha", tight_alpha, "also probe tightness against this larger alpha");
    c_ann->add_option("--len", len, "run length for the tightness probe")->capture_default_str();
    c_ann->add_option("--pump", pump, "largest pumping exponent for the probe")->capture_default_str();

    auto* c_adm = app.add_subcommand("admits-check", "check the annotation on bounded runs");
    c_adm->add_option("file", file)->required();
    c_adm->add_option("--alpha", alpha, "closure parameter (default: the annotation's)");
    c_adm->add_option("--len", len, "largest input length")->capture_default_str();

    auto* c_quo = app.add_subcommand("quotient", "left quotient by a word");
    c_quo->add_option("file", file)->required();
    c_quo->add_option("--word", word, "marker-free word")->required();
    c_quo->add_flag("--trim", trim_result, "remove states that became useless");

    auto* c_prune = app.add_subcommand("prune", "drop equivalent parallel transitions");
    c_prune->add_option("file", file)->required();
    c_prune->add_option("--k", k, "valuedness, for the reported bound k*2^m")->capture_default_str();

    auto* c_teq = app.add_subcommand("tequiv", "equivalence of two parallel transitions");
    c_teq->add_option("file", file)->required();
    c_teq->add_option("t1", t1, "transition index")->required();
    c_teq->add_option("t2", t2, "transition index")->required();
    c_teq->add_option("--oracle", oracle, "also compare all contexts up to this length");

    auto* c_equiv = app.add_subcommand("equiv", "bounded equivalence of two machines");
    c_equiv->add_option("file", file)->required();
    c_equiv->add_option("file2", file2)->required();
    c_equiv->add_option("--bound", n, "largest input length")->required();

    auto* c_kval = app.add_subcommand("kvalued", "bounded k-valuedness");
    c_kval->add_option("file", file)->required();
    c_kval->add_option("--k", k)->required();
    c_kval->add_option("--len", len)->required();

    auto* c_schema = app.add_subcommand("schema", "abstract update constants to unknowns");
    c_schema->add_option("file", file)->required();
    c_schema->add_option("--prefix", prefix)->capture_default_str();

    auto* c_weq = app.add_subcommand("weq", "word equations");
    c_weq->require_subcommand(1);
    auto* c_solve = c_weq->add_subcommand("solve", "solve a .weq system");
    c_solve->add_option("file", file)->required();
    auto* o_nielsen = c_solve->add_flag("--nielsen", nielsen, "Nielsen transformations (conjunctions only)");
    auto* o_bounded = c_solve->add_option("--bounded", bounded, "exhaustive search, values of length <= B");
    o_nielsen->excludes(o_bounded);
    c_solve->add_option("--depth", depth, "Nielsen depth")->capture_default_str();

    auto* c_test = app.add_subcommand("testset", "bounded test-set fixpoint check");
    c_test->add_option("file", file)->required();
    c_test->add_option("file2", file2, "second machine (default: the first, sharing unknowns)");
    c_test->add_option("--k", k)->required();
    c_test->add_option("--n", n)->required();
    c_test->add_option("--bound", bound)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_check->parsed()) {
            const Machine m = load(file);
            auto [s, j] = report([&](char** o) { return sstlab_validate(m.get(), o); });
            std::string human;
            for (const auto& d : j["diagnostics"]) {
                human += d["severity"].get<std::string>() + ": " + d["location"].get<std::string>() + ": " +
                         d["message"].get<std::string>() + "\n";
            }
            human += j["valid"].get<bool>() ? "valid\n" : "invalid\n";
            return finish(opt, s, j, human);
        }
        if (c_info->parsed()) {
            const Machine m = load(file);
            auto [s, j] = report([&](char** o) { return sstlab_machine_info(m.get(), o); });
            std::string human = "states: " + std::to_string(j["states"].size()) +
                                "\nregisters: " + std::to_string(j["registers"].size()) +
                                "\ncapacity: " + std::to_string(j["capacity"].get<std::size_t>()) +
                                "\nedge ambiguity: " + std::to_string(j["edge_ambiguity"].get<std::size_t>()) + "\n";
            for (const auto& t : j["transitions"]) {
                human += "[" + std::to_string(t["index"].get<std::size_t>()) + "] " + t["source"].get<std::string>() +
                         " -" + t["label"].get<std::string>() + "-> " + t["target"].get<std::string>() + " { " +
                         t["update"].get<std::string>() + " }\n";
            }
            return finish(opt, s, j, human);
        }
        if (c_eval->parsed()) {
            const Machine m = load(file);
            auto [s, j] = report([&](char** o) { return sstlab_eval(m.get(), input.c_str(), o); });
            std::string human;
            for (const auto& w : j["outputs"]) { human += w.get<std::string>() + "\n"; }
            if (j["outputs"].empty() && !opt.json) { std::cerr << "no output: input outside the domain\n"; }
            return finish(opt, s, j, human);
        }
        if (c_trim->parsed() || c_norm->parsed()) {
            const Machine m = load(file);
            sstlab_machine* out = nullptr;
            check(c_trim->parsed() ? sstlab_trim(m.get(), &out) : sstlab_normalize(m.get(), &out));
            const Machine result(out, &sstlab_machine_free);
            return print_machine(opt, result.get());
        }
        if (c_ann->parsed()) {
            const Machine m = load(file);
            sstlab_machine* out = nullptr;
            check(sstlab_annotate(m.get(), alpha, &out));
            const Machine result(out, &sstlab_machine_free);
            if (tight_alpha == 0) { return print_machine(opt, result.get()); }
            auto [s, j] = report([&](char** o) { return sstlab_tightness(result.get(), tight_alpha, len, pump, o); });
            if (opt.json) { return print_machine(opt, result.get(), {{"tightness", j}}); }
            std::cout << text_of(result.get());
            std::cerr << "tightness against alpha " << tight_alpha << ": " << j["states_tight"] << " of "
                      << j["states_seen"] << " states confirmed\n";
            for (const auto& q : j["unresolved"]) { std::cerr << "  unresolved: " << q.get<std::string>() << "\n"; }
            return kExitOk;
        }
        if (c_adm->parsed()) {
            const Machine m = load(file);
            auto [s, j] = report([&](char** o) { return sstlab_admits_check(m.get(), alpha, len, o); });
            std::string human = j["holds"].get<bool>() ? "holds\n" : "fails\n";
            if (j.contains("violation")) {
                const auto& v = j["violation"];
                human += "  input " + v["input"].get<std::string>() + ", run " + std::to_string(v["run"].get<std::size_t>()) +
                         ", position " + std::to_string(v["position"].get<std::size_t>()) + ": " +
                         v["variable"].get<std::string>() + " annotated " + v["expected"].get<std::string>() +
                         " but closure is " + v["actual"].get<std::string>() + "\n";
            }
            return finish(opt, s, j, human);
        }
        if (c_quo->parsed()) {
            const Machine m = load(file);
            sstlab_machine* out = nullptr;
            check(sstlab_quotient(m.get(), word.c_str(), trim_result ? 1 : 0, &out));
            const Machine result(out, &sstlab_machine_free);
            return print_machine(opt, result.get());
        }
        if (c_prune->parsed()) {
            const Machine m = load(file);
            sstlab_machine* out = nullptr;
            int fresh = 0;
            check(sstlab_prune(m.get(), &out, &fresh));
            const Machine result(out, &sstlab_machine_free);
            auto [s, info] = report([&](char** o) { return sstlab_machine_info(result.get(), o); });
            const std::size_t amb = info["edge_ambiguity"];
            const std::size_t limit = k << info["registers"].size();
            json extra = {{"auto_annotated", fresh != 0}, {"edge_ambiguity", amb}, {"bound", limit}};
            if (!opt.json) {
                std::cerr << "edge ambiguity " << amb << " (bound " << limit << ")"
                          << (fresh ? ", annotated at alpha = capacity" : "") << "\n";
            }
            return print_machine(opt, result.get(), extra);
        }
        if (c_teq->parsed()) {
            const Machine m = load(file);
            auto [s, j] = report([&](char** o) { return sstlab_tequiv(m.get(), t1, t2, oracle, o); });
            std::string human = j["equivalent"].get<bool>() ? "equivalent\n" : "not equivalent\n";
            if (j.contains("oracle")) {
                const auto& o = j["oracle"];
                human += "oracle: " + std::string(o["equivalent"].get<bool>() ? "equivalent" : "not equivalent") + " (" +
                         std::to_string(o["witnesses"].get<std::size_t>()) + " of " +
                         std::to_string(o["contexts"].get<std::size_t>()) + " contexts differ)\n";
                if (o.contains("witness")) {
                    human += "  on " + o["witness"]["input"].get<std::string>() + ": " +
                             quoted(o["witness"]["output1"]) + " vs " + quoted(o["witness"]["output2"]) + "\n";
                }
            }
            return finish(opt, s, j, human);
        }
        if (c_equiv->parsed()) {
            const Machine a = load(file), b = load(file2);
            auto [s, j] = report([&](char** o) { return sstlab_equiv_bounded(a.get(), b.get(), n, o); });
            std::string human = j["equivalent"].get<bool>() ? "equivalent up to length " + std::to_string(n) + "\n"
                                                            : "differ on " + j["witness"].get<std::string>() + ": " +
                                                                  words(j["outputs1"]) + " vs " + words(j["outputs2"]) + "\n";
            return finish(opt, s, j, human);
        }
        if (c_kval->parsed()) {
            const Machine m = load(file);
            auto [s, j] = report([&](char** o) { return sstlab_kvalued(m.get(), k, len, o); });
            std::string human = j["holds"].get<bool>() ? "holds\n"
                                                       : "fails on " + j["witness"].get<std::string>() + ": " +
                                                             words(j["outputs"]) + "\n";
            return finish(opt, s, j, human);
        }
        if (c_schema->parsed()) {
            const Machine m = load(file);
            auto [s, j] = report([&](char** o) { return sstlab_schema(m.get(), prefix.c_str(), o); });
            return finish(opt, s, j, j["text"].get<std::string>());
        }
        if (c_solve->parsed()) {
            const std::string text = read_file(file);
            const bool use_nielsen = nielsen || !bounded;
            char* out = nullptr;
            const sstlab_status s = sstlab_weq_solve(text.c_str(), use_nielsen ? SSTLAB_WEQ_NIELSEN : SSTLAB_WEQ_BOUNDED,
                                                     bounded.value_or(0), depth, &out);
            if (!out) { check(s); }
            const json j = json::parse(take(out));
            std::string human = j["status"].get<std::string>() + "\n";
            if (j.contains("witness")) { human += assignment(j["witness"]); }
            return finish(opt, s, j, human);
        }
        if (c_test->parsed()) {
            const Machine a = load(file);
            const Machine b = file2.empty() ? Machine(nullptr, &sstlab_machine_free) : load(file2);
            char* out = nullptr;
            const sstlab_status s = sstlab_testset(a.get(), b.get(), k, n, bound, &out);
            if (!out) { check(s); }
            const json j = json::parse(take(out));
            std::string human = j["status"].get<std::string>() + "\n";
            if (j.contains("witness")) {
                human += "violated clause for " + j["input"].get<std::string>() + " under\n" + assignment(j["witness"]);
            }
            return finish(opt, s, j, human);
        }
    } catch (const Failure& f) {
        std::cerr << "sst: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "sst: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
