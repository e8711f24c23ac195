#include "mema/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "mema/errors.hpp"

namespace mema {

namespace {

struct TokenStream {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;

    std::optional<std::string_view> next() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '\n') { ++line; ++pos; continue; }
            if (c == ' ' || c == '\t' || c == '\r') { ++pos; continue; }
            break;
        }
        if (pos >= text.size()) return std::nullopt;
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }

    void skip_line() {
        while (pos < text.size() && text[pos] != '\n') ++pos;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(line) + ": " + what);
    }

    int integer(std::string_view token) const {
        try {
            std::size_t used = 0;
            int value = std::stoi(std::string(token), &used);
            if (used != token.size()) fail("expected an integer, got \"" + std::string(token) + "\"");
            return value;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            fail("expected an integer, got \"" + std::string(token) + "\"");
        }
    }
};

// Shared clause reader: literals until 0, normalized (dedup, tautology drop).
void read_clauses(TokenStream& ts, Cnf& cnf, int expected_clauses) {
    int seen = 0;
    std::vector<int> clause;
    while (auto token = ts.next()) {
        if (*token == "c") { ts.skip_line(); continue; }
        int lit = ts.integer(*token);
        if (lit == 0) {
            ++seen;
            bool tautology = false;
            std::sort(clause.begin(), clause.end(), [](int a, int b) {
                return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b);
            });
            clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
            for (std::size_t i = 0; i + 1 < clause.size(); ++i)
                if (clause[i] == -clause[i + 1]) tautology = true;
            if (tautology)
                ++cnf.dropped_tautologies;
            else
                cnf.clauses.push_back(clause);
            clause.clear();
            continue;
        }
        if (std::abs(lit) > cnf.num_vars)
            ts.fail("literal " + std::to_string(lit) + " exceeds declared variable count");
        clause.push_back(lit);
    }
    if (!clause.empty()) ts.fail("clause not terminated by 0");
    if (seen != expected_clauses)
        ts.fail("header declares " + std::to_string(expected_clauses) + " clauses, found " +
                std::to_string(seen));
}

void read_header(TokenStream& ts, Cnf& cnf, int& clause_count) {
    while (auto token = ts.next()) {
        if (*token == "c") { ts.skip_line(); continue; }
        if (*token != "p") ts.fail("expected \"p cnf\" header");
        auto kind = ts.next();
        if (!kind || *kind != "cnf") ts.fail("expected \"p cnf\" header");
        auto vars = ts.next();
        auto clauses = ts.next();
        if (!vars || !clauses) ts.fail("truncated \"p cnf\" header");
        cnf.num_vars = ts.integer(*vars);
        clause_count = ts.integer(*clauses);
        if (cnf.num_vars < 0 || clause_count < 0) ts.fail("negative header counts");
        return;
    }
    ts.fail("missing \"p cnf\" header");
}

Letter one() { return Letter::intern("1"); }
Letter init_letter(int i) { return Letter::intern("1_" + std::to_string(i)); }
Letter done_letter(int i) { return Letter::intern("2_" + std::to_string(i)); }

VariableId pos_var(int i) { return {"X" + std::to_string(i), 1}; }
VariableId neg_var(int i) { return {"NX" + std::to_string(i), 1}; }
VariableId flag_var(int i) { return {"TX" + std::to_string(i), 1}; }

/// Variable read by a satisfied literal, and by its complement.
VariableId literal_var(int lit) {
    return lit > 0 ? pos_var(lit) : neg_var(-lit);
}
VariableId literal_complement_var(int lit) {
    return lit > 0 ? neg_var(lit) : pos_var(-lit);
}

struct NuBuilder {
    NuAutomaton a;

    int state(const std::string& name) {
        int i = a.state_index(name);
        if (i >= 0) return i;
        a.states.push_back(name);
        return int(a.states.size()) - 1;
    }
    void read(int from, const VariableId& v, int to) {
        a.transitions.push_back({NuTransition::Kind::Read, from, to, v, {}});
    }
    void write(int from, const VariableId& v, int to) {
        a.transitions.push_back({NuTransition::Kind::Write, from, to, v, {}});
    }
    void reset(int from, std::vector<VariableId> vars, int to) {
        std::sort(vars.begin(), vars.end());
        a.transitions.push_back({NuTransition::Kind::Reset, from, to, {}, std::move(vars)});
    }
};

} // namespace

Cnf parse_dimacs(std::string_view text) {
    TokenStream ts{text};
    Cnf cnf;
    int clause_count = 0;
    read_header(ts, cnf, clause_count);
    read_clauses(ts, cnf, clause_count);
    return cnf;
}

Qbf parse_qdimacs(std::string_view text) {
    TokenStream ts{text};
    Qbf qbf;
    int clause_count = 0;
    read_header(ts, qbf.matrix, clause_count);

    // quantifier lines precede the clauses
    std::vector<int> quantified;
    while (true) {
        TokenStream probe = ts;
        auto token = probe.next();
        if (!token) break;
        if (*token == "c") { ts = probe; ts.skip_line(); continue; }
        if (*token != "a" && *token != "e") break;
        ts = probe;
        Quant q = *token == "a" ? Quant::Forall : Quant::Exists;
        while (true) {
            auto v = ts.next();
            if (!v) ts.fail("quantifier line not terminated by 0");
            int var = ts.integer(*v);
            if (var == 0) break;
            if (var < 0 || var > qbf.matrix.num_vars)
                ts.fail("quantified variable " + std::to_string(var) + " out of range");
            qbf.prefix.push_back({q, var});
            quantified.push_back(var);
        }
    }
    for (int i = 0; i < int(quantified.size()); ++i)
        if (quantified[i] != i + 1)
            ts.fail("prefix must quantify variables 1..n in order, exactly once");
    if (int(quantified.size()) != qbf.matrix.num_vars)
        ts.fail("prefix quantifies " + std::to_string(quantified.size()) + " of " +
                std::to_string(qbf.matrix.num_vars) + " variables");

    read_clauses(ts, qbf.matrix, clause_count);
    return qbf;
}

std::pair<Lama, Word> reduce_3sat(const Cnf& cnf) {
    for (const auto& clause : cnf.clauses)
        if (clause.size() != 3)
            throw UsageError("3SAT reduction requires exactly 3 literals per clause");

    int n = cnf.num_vars;
    int m = int(cnf.clauses.size());
    Lama a;
    a.layers = std::max(n, 1);
    for (int i = 1; i <= n; ++i) {
        a.variables.push_back({"X" + std::to_string(i), i});
        a.variables.push_back({"NX" + std::to_string(i), i});
    }
    a.initial_memory = MemoryContext::over(a.variables);
    for (int s = 0; s <= n + m; ++s) a.states.push_back("s" + std::to_string(s));
    a.initial = 0;
    a.finals = {n + m};

    auto action_on = [&](int layer, const std::string& name, Mode mode) {
        std::vector<LayerAction> alpha(a.layers, std::nullopt);
        alpha[layer - 1] = {{name, layer}, mode};
        return alpha;
    };
    // assignment choice per variable
    for (int i = 1; i <= n; ++i) {
        a.transitions.push_back({LamaTransition::Kind::Obs, i - 1, i,
                                 action_on(i, "X" + std::to_string(i), Mode::Write), {}});
        a.transitions.push_back({LamaTransition::Kind::Obs, i - 1, i,
                                 action_on(i, "NX" + std::to_string(i), Mode::Write), {}});
    }
    // one satisfied literal per clause
    for (int j = 0; j < m; ++j)
        for (int lit : cnf.clauses[j]) {
            int layer = std::abs(lit);
            std::string name = (lit > 0 ? "X" : "NX") + std::to_string(layer);
            a.transitions.push_back({LamaTransition::Kind::Obs, n + j, n + j + 1,
                                     action_on(layer, name, Mode::Read), {}});
        }

    Word w(n + m, one());
    return {std::move(a), std::move(w)};
}

NuAutomaton reduce_tqbf(const Qbf& qbf) {
    NuBuilder b;
    for (const auto& [q, i] : qbf.prefix) {
        b.a.variables.push_back(pos_var(i));
        b.a.variables.push_back(neg_var(i));
        if (q == Quant::Forall) b.a.variables.push_back(flag_var(i));
    }
    b.a.initial_memory = MemoryContext::over(b.a.variables);

    // clause chain; entry of clause j+1 is the exit of clause j
    int entry = b.state("c1_in");
    int cursor = entry;
    for (int j = 0; j < int(qbf.matrix.clauses.size()); ++j) {
        const std::vector<int>& clause = qbf.matrix.clauses[j];
        std::string cp = "c" + std::to_string(j + 1) + "_";
        int k = int(clause.size());
        if (k == 0) { // empty clause: unsatisfiable, the chain dead-ends here
            cursor = b.state(cp + "dead");
            continue;
        }
        std::vector<int> top(k), bottom(k);
        for (int p = 1; p <= k; ++p) {
            top[p - 1] = b.state(cp + "t" + std::to_string(p));
            bottom[p - 1] = b.state(cp + "b" + std::to_string(p));
        }
        // row change on the first satisfied literal; afterwards both reads advance
        b.read(cursor, literal_var(clause[0]), top[0]);
        b.read(cursor, literal_complement_var(clause[0]), bottom[0]);
        for (int p = 2; p <= k; ++p) {
            b.read(top[p - 2], literal_var(clause[p - 1]), top[p - 1]);
            b.read(top[p - 2], literal_complement_var(clause[p - 1]), top[p - 1]);
            b.read(bottom[p - 2], literal_var(clause[p - 1]), top[p - 1]);
            b.read(bottom[p - 2], literal_complement_var(clause[p - 1]), bottom[p - 1]);
        }
        cursor = top[k - 1];
    }
    int body_initial = entry;
    int body_final = cursor;

    // wrap variable gadgets from the innermost declaration outwards
    for (int pi = int(qbf.prefix.size()) - 1; pi >= 0; --pi) {
        auto [q, i] = qbf.prefix[pi];
        std::string up = (q == Quant::Forall ? "u" : "e") + std::to_string(i) + "_";
        if (q == Quant::Exists) {
            int start = b.state(up + "0");
            b.write(start, pos_var(i), body_initial);
            b.write(start, neg_var(i), body_initial);
            body_initial = start;
        } else {
            int start = b.state(up + "0");
            int after_flag = b.state(up + "3");
            int cleared = b.state(up + "4");
            int flipped = b.state(up + "5");
            int exit = b.state(up + "f");
            b.write(start, neg_var(i), body_initial);
            b.write(body_final, flag_var(i), after_flag);
            b.reset(after_flag, {neg_var(i)}, cleared);
            b.write(cleared, pos_var(i), flipped);
            std::vector<VariableId> inner;
            for (int pj = pi + 1; pj < int(qbf.prefix.size()); ++pj) {
                auto [qj, j] = qbf.prefix[pj];
                inner.push_back(pos_var(j));
                inner.push_back(neg_var(j));
                if (qj == Quant::Forall) inner.push_back(flag_var(j));
            }
            b.reset(flipped, std::move(inner), body_initial);
            b.read(body_final, flag_var(i), exit);
            body_initial = start;
            body_final = exit;
        }
    }

    b.a.initial = body_initial;
    b.a.finals = {body_final};
    std::sort(b.a.finals.begin(), b.a.finals.end());
    return std::move(b.a);
}

Word tqbf_input_word(const Qbf& qbf) {
    // one item list: prefix entries then clauses, consumed recursively
    std::vector<Word> per_clause;
    for (const auto& clause : qbf.matrix.clauses) {
        Word wj;
        for (int lit : clause) wj.push_back(init_letter(std::abs(lit)));
        per_clause.push_back(std::move(wj));
    }

    auto build = [&](auto&& self, std::size_t item) -> Word {
        if (item == qbf.prefix.size() + per_clause.size()) return {};
        if (item < qbf.prefix.size()) {
            auto [q, i] = qbf.prefix[item];
            Word rest = self(self, item + 1);
            Word out{init_letter(i)};
            out.insert(out.end(), rest.begin(), rest.end());
            if (q == Quant::Forall) {
                out.push_back(done_letter(i));
                out.push_back(init_letter(i));
                out.insert(out.end(), rest.begin(), rest.end());
                out.push_back(done_letter(i));
            }
            return out;
        }
        const Word& wj = per_clause[item - qbf.prefix.size()];
        Word out = wj;
        Word rest = self(self, item + 1);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    };
    return build(build, 0);
}

bool brute_force_sat(const Cnf& cnf) {
    if (cnf.num_vars > 24) throw UsageError("brute-force SAT capped at 24 variables");
    for (std::uint32_t bits = 0; bits < (1u << cnf.num_vars); ++bits) {
        bool all = true;
        for (const auto& clause : cnf.clauses) {
            bool sat = false;
            for (int lit : clause) {
                bool value = bits & (1u << (std::abs(lit) - 1));
                if (lit > 0 ? value : !value) { sat = true; break; }
            }
            if (!sat) { all = false; break; }
        }
        if (all) return true;
    }
    return false;
}

bool brute_force_qbf(const Qbf& qbf) {
    if (qbf.matrix.num_vars > 16) throw UsageError("brute-force QBF capped at 16 variables");
    auto eval = [&](auto&& self, std::size_t depth, std::uint32_t bits) -> bool {
        if (depth == qbf.prefix.size()) {
            for (const auto& clause : qbf.matrix.clauses) {
                bool sat = false;
                for (int lit : clause) {
                    bool value = bits & (1u << (std::abs(lit) - 1));
                    if (lit > 0 ? value : !value) { sat = true; break; }
                }
                if (!sat) return false;
            }
            return true;
        }
        auto [q, i] = qbf.prefix[depth];
        bool low = self(self, depth + 1, bits);
        bool high = self(self, depth + 1, bits | (1u << (i - 1)));
        return q == Quant::Forall ? (low && high) : (low || high);
    };
    return eval(eval, 0, 0);
}

} // namespace mema
