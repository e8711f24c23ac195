// Command line front end: validate | run | check-cert | encode | empty |
// reduce-sat | reduce-qbf | gen-example. Every automaton/file argument
// accepts "-" for standard input. Exit codes: 0 success (accept / nonempty /
// check passed), 1 negative result, 2 I/O or parse error, 64 usage error.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mema/corpus.hpp"
#include "mema/emptiness.hpp"
#include "mema/encodings.hpp"
#include "mema/errors.hpp"
#include "mema/json_io.hpp"
#include "mema/membership.hpp"
#include "mema/reductions.hpp"

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream out;
        out << std::cin.rdbuf();
        return out.str();
    }
    std::ifstream in(path);
    if (!in) throw mema::ParseError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

mema::Automaton load_automaton_arg(const std::string& path, bool& used_stdin) {
    used_stdin = path == "-";
    if (used_stdin) return mema::read_automaton(std::cin);
    std::ifstream in(path);
    if (!in) throw mema::ParseError("cannot open " + path);
    return mema::read_automaton(in);
}

// "--word -" takes the word from the line following the JSON document when
// the automaton also came from standard input.
mema::Word load_word_arg(const std::string& word, bool automaton_was_stdin) {
    if (word != "-") return mema::parse_word(word);
    std::string line;
    if (automaton_was_stdin) std::getline(std::cin, line); // tail of the JSON line
    if (!std::getline(std::cin, line))
        throw mema::ParseError("missing word line on standard input");
    return mema::parse_word(line);
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
    std::string file;
    std::string word;
    std::string run_file;
    std::string example_id;
    bool as_json = false;
    bool as_dot = false;
    bool certificate = false;
    bool randomized = false;
    bool stats = false;
    bool witness = false;
    int n = 3;
    std::uint64_t seed = 0;
    int restarts = 100;
};

int cmd_validate(const Options& opt) {
    bool from_stdin = false;
    mema::Automaton a = load_automaton_arg(opt.file, from_stdin);
    std::vector<std::string> violations = mema::validate(a);
    if (opt.as_json) {
        json out{{"command", "validate"}, {"ok", violations.empty()}, {"violations", violations}};
        emit_json(out);
    } else if (opt.as_dot) {
        std::cout << mema::to_dot(a);
        for (const auto& v : violations) std::cerr << v << "\n";
    } else {
        for (const auto& v : violations) std::cerr << v << "\n";
        std::cout << (violations.empty() ? "VALID" : "INVALID") << "\n";
    }
    return violations.empty() ? 0 : 1;
}

int cmd_run(const Options& opt) {
    bool from_stdin = false;
    mema::Automaton a = load_automaton_arg(opt.file, from_stdin);
    mema::Word w = load_word_arg(opt.word, from_stdin);
    mema::MembershipResult result = mema::decide_membership(a, w);
    if (opt.as_json) {
        json out{{"command", "run"}, {"accepted", result.accepted}};
        if (result.witness && opt.certificate)
            out["certificate"] = mema::run_to_json(a, *result.witness);
        emit_json(out);
    } else {
        std::cout << (result.accepted ? "ACCEPT" : "REJECT") << "\n";
        if (result.accepted && opt.certificate)
            std::cout << mema::run_to_json(a, *result.witness).dump(2) << "\n";
    }
    return result.accepted ? 0 : 1;
}

int cmd_check_cert(const Options& opt) {
    bool from_stdin = false;
    mema::Automaton a = load_automaton_arg(opt.file, from_stdin);
    mema::Word w = load_word_arg(opt.word, from_stdin);
    json run_doc;
    try {
        std::istringstream in(slurp(opt.run_file));
        in >> run_doc;
    } catch (const json::exception& e) {
        throw mema::ParseError(std::string("invalid run JSON: ") + e.what());
    }
    mema::Run run = mema::run_from_json(a, run_doc);
    mema::CertificateCheck check = mema::check_certificate(a, w, run);
    if (opt.as_json) {
        emit_json(json{{"command", "check-cert"}, {"ok", check.ok}, {"reason", check.reason}});
    } else if (check.ok) {
        std::cout << "OK\n";
    } else {
        std::cout << "FAIL: " << check.reason << "\n";
    }
    return check.ok ? 0 : 1;
}

int cmd_encode(const Options& opt) {
    bool from_stdin = false;
    mema::Automaton a = load_automaton_arg(opt.file, from_stdin);
    mema::Automaton target;
    std::optional<mema::Word> out_word;
    std::optional<mema::Word> in_word;
    if (!opt.word.empty()) in_word = load_word_arg(opt.word, from_stdin);

    if (const auto* nu = std::get_if<mema::NuAutomaton>(&a)) {
        target = mema::nu_to_lama(*nu);
        if (in_word) out_word = *in_word; // single layer, language preserved
    } else if (const auto* lama = std::get_if<mema::Lama>(&a)) {
        target = mema::lama_to_nu(*lama);
        if (in_word) out_word = mema::xi_rename(*in_word, lama->layers);
    } else {
        target = mema::hra_to_lama(std::get<mema::Hra>(a));
        if (in_word) out_word = mema::zeta_rename(*in_word);
    }

    if (opt.as_json) {
        json out{{"command", "encode"}, {"automaton", mema::automaton_to_json(target)}};
        if (out_word) out["word"] = mema::format_word(*out_word);
        emit_json(out);
    } else if (opt.as_dot) {
        std::cout << mema::to_dot(target);
    } else {
        emit_json(mema::automaton_to_json(target));
        if (out_word) std::cout << mema::format_word(*out_word) << "\n";
    }
    return 0;
}

int cmd_empty(const Options& opt) {
    bool from_stdin = false;
    mema::Automaton a = load_automaton_arg(opt.file, from_stdin);
    const auto* nu = std::get_if<mema::NuAutomaton>(&a);
    if (!nu)
        throw mema::UsageError(
            "empty: only nu-automata are supported (emptiness of layered automata is an open "
            "problem; history-register emptiness is Ackermann-complete and out of scope)");
    for (const auto& [v, letters] : nu->initial_memory.slots())
        for (mema::Letter u : letters)
            if (u.text().rfind("τ", 0) == 0)
                throw mema::UsageError("empty: letters starting with the reserved prefix τ are "
                                       "not allowed here (they are generated for witnesses)");

    long bound = long(nu->states.size()) << nu->variables.size();
    if (opt.randomized) {
        std::optional<mema::Word> witness =
            mema::decide_nonempty_randomized_witness(*nu, opt.seed, opt.restarts);
        if (opt.as_json) {
            json out{{"command", "empty"},
                     {"randomized", true},
                     {"nonempty", witness.has_value()}};
            if (witness) out["witness"] = mema::format_word(*witness);
            emit_json(out);
        } else if (witness) {
            std::cout << mema::format_word(*witness) << "\n";
        } else {
            std::cout << "EMPTY\n";
            std::cerr << "note: the randomized walk is one-sided; EMPTY is not certified\n";
        }
        return witness ? 0 : 1;
    }

    mema::EmptinessVerdict verdict = mema::decide_nonempty(*nu);
    if (opt.as_json) {
        json out{{"command", "empty"},
                 {"nonempty", verdict.nonempty},
                 {"explored", verdict.explored},
                 {"bound", bound}};
        if (verdict.witness) out["witness"] = mema::format_word(*verdict.witness);
        emit_json(out);
    } else {
        if (verdict.nonempty)
            std::cout << mema::format_word(*verdict.witness) << "\n";
        else
            std::cout << "EMPTY\n";
        if (opt.stats)
            std::cerr << "explored " << verdict.explored << " abstract states (bound " << bound
                      << ")\n";
    }
    return verdict.nonempty ? 0 : 1;
}

int cmd_reduce_sat(const Options& opt) {
    mema::Cnf cnf = mema::parse_dimacs(slurp(opt.file));
    auto [lama, word] = mema::reduce_3sat(cnf);
    if (cnf.dropped_tautologies > 0)
        std::cerr << "dropped " << cnf.dropped_tautologies << " tautological clause(s)\n";
    mema::Automaton a{std::move(lama)};
    if (opt.as_json) {
        emit_json(json{{"command", "reduce-sat"},
                       {"automaton", mema::automaton_to_json(a)},
                       {"word", mema::format_word(word)},
                       {"dropped_tautologies", cnf.dropped_tautologies}});
    } else {
        emit_json(mema::automaton_to_json(a));
        std::cout << mema::format_word(word) << "\n";
    }
    return 0;
}

int cmd_reduce_qbf(const Options& opt) {
    mema::Qbf qbf = mema::parse_qdimacs(slurp(opt.file));
    if (qbf.matrix.dropped_tautologies > 0)
        std::cerr << "dropped " << qbf.matrix.dropped_tautologies << " tautological clause(s)\n";
    mema::Automaton a{mema::reduce_tqbf(qbf)};
    std::optional<mema::Word> word;
    if (opt.witness) word = mema::tqbf_input_word(qbf);
    if (opt.as_json) {
        json out{{"command", "reduce-qbf"}, {"automaton", mema::automaton_to_json(a)}};
        if (word) out["word"] = mema::format_word(*word);
        emit_json(out);
    } else {
        emit_json(mema::automaton_to_json(a));
        if (word) std::cout << mema::format_word(*word) << "\n";
    }
    return 0;
}

int cmd_gen_example(const Options& opt) {
    mema::Automaton a;
    std::optional<mema::Word> witness;
    if (opt.example_id == "fig2_lp") {
        a = mema::fig2_lp();
    } else if (opt.example_id == "fig3_hra") {
        a = mema::fig3_hra();
    } else if (opt.example_id == "double_exp") {
        a = mema::double_exp(opt.n);
        if (opt.witness) witness = mema::double_exp_witness(opt.n);
    } else {
        throw mema::UsageError("unknown example \"" + opt.example_id +
                               "\" (fig2_lp | fig3_hra | double_exp)");
    }
    if (opt.witness && !witness)
        throw mema::UsageError("--witness is only available for double_exp");

    if (opt.as_json) {
        json out{{"command", "gen-example"}, {"automaton", mema::automaton_to_json(a)}};
        if (witness) out["witness"] = mema::format_word(*witness);
        emit_json(out);
    } else if (opt.as_dot) {
        std::cout << mema::to_dot(a);
    } else {
        emit_json(mema::automaton_to_json(a));
        if (witness) std::cout << mema::format_word(*witness) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unbounded-memory automata over infinite alphabets"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_dot) {
        cmd->add_flag("--json", opt.as_json, "emit a single JSON result object");
        if (with_dot) cmd->add_flag("--dot", opt.as_dot, "emit a DOT structural dump");
    };

    CLI::App* validate = app.add_subcommand("validate", "check automaton invariants");
    validate->add_option("file", opt.file, "automaton JSON ('-' for stdin)")->required();
    add_common(validate, true);

    CLI::App* run = app.add_subcommand("run", "decide membership of a word");
    run->add_option("file", opt.file, "automaton JSON ('-' for stdin)")->required();
    run->add_option("--word", opt.word, "word, space-separated letters ('-' reads a line)")
        ->required();
    run->add_flag("--certificate", opt.certificate, "print the accepting run as JSON");
    add_common(run, false);

    CLI::App* check = app.add_subcommand("check-cert", "verify a run certificate");
    check->add_option("file", opt.file, "automaton JSON ('-' for stdin)")->required();
    check->add_option("--word", opt.word, "word the run is supposed to accept")->required();
    check->add_option("--run", opt.run_file, "run JSON file ('-' for stdin)")->required();
    add_common(check, false);

    CLI::App* encode = app.add_subcommand(
        "encode", "encode lama->nu, hra->lama, or nu->lama, with word renaming");
    encode->add_option("file", opt.file, "automaton JSON ('-' for stdin)")->required();
    encode->add_option("--word", opt.word, "also emit the renamed word");
    add_common(encode, true);

    CLI::App* empty = app.add_subcommand("empty", "decide non-emptiness of a nu-automaton");
    empty->add_option("file", opt.file, "automaton JSON ('-' for stdin)")->required();
    empty->add_flag("--randomized", opt.randomized, "one-sided randomized walk");
    empty->add_option("--seed", opt.seed, "randomized walk seed (default 0)");
    empty->add_option("--restarts", opt.restarts, "randomized walk restarts (default 100)");
    empty->add_flag("--stats", opt.stats, "report explored abstract states against the bound");
    add_common(empty, false);

    CLI::App* rsat = app.add_subcommand("reduce-sat", "3SAT file to automaton + word");
    rsat->add_option("file", opt.file, "DIMACS CNF file ('-' for stdin)")->required();
    add_common(rsat, false);

    CLI::App* rqbf = app.add_subcommand("reduce-qbf", "TQBF file to automaton");
    rqbf->add_option("file", opt.file, "QDIMACS file ('-' for stdin)")->required();
    rqbf->add_flag("--word", opt.witness, "also emit the unfolded input word");
    add_common(rqbf, false);

    CLI::App* gen = app.add_subcommand("gen-example", "emit a library example automaton");
    gen->add_option("id", opt.example_id, "fig2_lp | fig3_hra | double_exp")->required();
    gen->add_option("--n", opt.n, "layer count for double_exp (default 3)");
    gen->add_flag("--witness", opt.witness, "also emit the accepted witness word");
    add_common(gen, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*validate) return cmd_validate(opt);
        if (*run) return cmd_run(opt);
        if (*check) return cmd_check_cert(opt);
        if (*encode) return cmd_encode(opt);
        if (*empty) return cmd_empty(opt);
        if (*rsat) return cmd_reduce_sat(opt);
        if (*rqbf) return cmd_reduce_qbf(opt);
        if (*gen) return cmd_gen_example(opt);
    } catch (const mema::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    } catch (const mema::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mema::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mema::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return 0;
}
