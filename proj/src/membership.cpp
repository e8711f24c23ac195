#include "mema/membership.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace mema {

namespace {

struct Node {
    int pos = 0;
    Configuration cfg;
    bool operator==(const Node&) const = default;
};

struct NodeHash {
    std::size_t operator()(const Node& n) const { return hash_mix(n.cfg.hash(), std::size_t(n.pos)); }
};

struct Parent {
    Node prev;
    int transition = -1;
    std::optional<Letter> letter;
    bool root = false;
};

template <class A>
MembershipResult search_word(const A& a, const Word& w) {
    detail::TransitionIndex idx = detail::index_transitions(a);
    Node start{0, initial_configuration(a)};
    std::unordered_map<Node, Parent, NodeHash> visited;
    std::deque<Node> queue;
    visited.emplace(start, Parent{{}, -1, std::nullopt, true});
    queue.push_back(start);

    std::optional<Node> goal;
    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        if (cur.pos == int(w.size()) && a.is_final(cur.cfg.state)) {
            goal = std::move(cur);
            break;
        }
        for (int ti : idx.out[cur.cfg.state]) {
            const auto& t = a.transitions[ti];
            if (t.observable()) {
                if (cur.pos >= int(w.size())) continue;
                auto next = detail::try_obs(a, t, cur.cfg, w[cur.pos]);
                if (!next) continue;
                Node node{cur.pos + 1, std::move(*next)};
                if (visited.emplace(node, Parent{cur, ti, w[cur.pos], false}).second)
                    queue.push_back(std::move(node));
            } else {
                Node node{cur.pos, detail::apply_eps(cur.cfg, t)};
                if (visited.emplace(node, Parent{cur, ti, std::nullopt, false}).second)
                    queue.push_back(std::move(node));
            }
        }
    }
    if (!goal) return {};

    Run run;
    Node at = *goal;
    while (true) {
        const Parent& p = visited.at(at);
        run.configs.push_back(at.cfg);
        if (p.root) break;
        run.steps.push_back({p.transition, p.letter});
        at = p.prev;
    }
    std::reverse(run.configs.begin(), run.configs.end());
    std::reverse(run.steps.begin(), run.steps.end());
    return {true, std::move(run)};
}

std::size_t var_count(const NuAutomaton& a) { return a.variables.size(); }
std::size_t var_count(const Lama& a) { return a.variables.size(); }
std::size_t var_count(const Hra& a) { return a.histories.size(); }

template <class A>
CertificateCheck check_impl(const A& a, const Word& w, const Run& run) {
    auto fail = [](std::string r) { return CertificateCheck{false, std::move(r)}; };
    if (run.configs.empty() || run.configs.size() != run.steps.size() + 1)
        return fail("run must alternate configurations and transitions, starting and "
                    "ending with a configuration");
    if (!(run.configs.front() == initial_configuration(a)))
        return fail("run does not start at the initial configuration");

    std::size_t m = run.steps.size();
    std::size_t bound = w.size() + w.size() * (a.states.size() * var_count(a));
    if (m > bound)
        return fail("run has " + std::to_string(m) + " transitions, certificate bound is " +
                    std::to_string(bound));

    std::size_t pos = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const RunStep& step = run.steps[i];
        std::string where = "step " + std::to_string(i + 1) + ": ";
        if (step.transition < 0 || step.transition >= int(a.transitions.size()))
            return fail(where + "transition index out of range");
        const auto& t = a.transitions[step.transition];
        const Configuration& cur = run.configs[i];
        if (t.from != cur.state) return fail(where + "transition source mismatch");
        Configuration next;
        try {
            if (t.observable()) {
                if (!step.letter) return fail(where + "observable transition without a letter");
                if (pos >= w.size() || !(*step.letter == w[pos]))
                    return fail(where + "letter does not match the word");
                auto r = detail::try_obs(a, t, cur, *step.letter);
                if (!r) return fail(where + "transition not enabled");
                next = std::move(*r);
                ++pos;
            } else {
                if (step.letter) return fail(where + "non-observable transition carries a letter");
                next = detail::apply_eps(cur, t);
            }
        } catch (const std::exception& e) {
            return fail(where + e.what());
        }
        if (!(next == run.configs[i + 1]))
            return fail(where + "successor configuration mismatch");
    }
    if (pos != w.size())
        return fail("run consumes " + std::to_string(pos) + " of " +
                    std::to_string(w.size()) + " letters");
    if (!a.is_final(run.configs.back().state))
        return fail("run does not end in a final state");
    return {true, ""};
}

std::vector<Letter> dedup_pool(const std::vector<Letter>& pool) {
    std::vector<Letter> p = pool;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
}

struct Prev {
    Configuration parent;
    std::optional<Letter> letter;
    bool root = false;
};

template <class A>
std::optional<Word> probe_impl(const A& a, const std::vector<Letter>& pool, long max_len) {
    detail::TransitionIndex idx = detail::index_transitions(a);
    std::unordered_map<Configuration, Prev> visited;
    std::optional<Configuration> found;
    auto visit = [&](Configuration cfg, Prev prev, std::vector<Configuration>& into) {
        if (!visited.emplace(cfg, std::move(prev)).second) return;
        if (!found && a.is_final(cfg.state)) found = cfg;
        into.push_back(std::move(cfg));
    };
    // layer members get expanded with epsilon steps in place; the index loop
    // tolerates appends during iteration
    auto close = [&](std::vector<Configuration>& layer) {
        for (std::size_t i = 0; i < layer.size() && !found; ++i) {
            const Configuration c = layer[i];
            for (int ti : idx.out[c.state]) {
                const auto& t = a.transitions[ti];
                if (t.observable()) continue;
                visit(detail::apply_eps(c, t), Prev{c, std::nullopt, false}, layer);
            }
        }
    };

    std::vector<Configuration> layer;
    visit(initial_configuration(a), Prev{{}, std::nullopt, true}, layer);
    close(layer);
    for (long depth = 0; depth < max_len && !found && !layer.empty(); ++depth) {
        std::vector<Configuration> next;
        for (const Configuration& c : layer) {
            if (found) break;
            for (int ti : idx.out[c.state]) {
                const auto& t = a.transitions[ti];
                if (!t.observable()) continue;
                for (Letter u : pool)
                    if (auto r = detail::try_obs(a, t, c, u))
                        visit(std::move(*r), Prev{c, u, false}, next);
            }
        }
        close(next);
        layer = std::move(next);
    }
    if (!found) return std::nullopt;

    Word w;
    Configuration at = *found;
    while (true) {
        const Prev& p = visited.at(at);
        if (p.letter) w.push_back(*p.letter);
        if (p.root) break;
        at = p.parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

} // namespace

MembershipResult decide_membership(const NuAutomaton& a, const Word& w) {
    require_valid(a);
    return search_word(a, w);
}
MembershipResult decide_membership(const Lama& a, const Word& w) {
    require_valid(a);
    return search_word(a, w);
}
MembershipResult decide_membership(const Hra& a, const Word& w) {
    require_valid(a);
    return search_word(a, w);
}
MembershipResult decide_membership(const Automaton& a, const Word& w) {
    return std::visit([&](const auto& x) { return decide_membership(x, w); }, a);
}

CertificateCheck check_certificate(const NuAutomaton& a, const Word& w, const Run& run) {
    return check_impl(a, w, run);
}
CertificateCheck check_certificate(const Lama& a, const Word& w, const Run& run) {
    return check_impl(a, w, run);
}
CertificateCheck check_certificate(const Hra& a, const Word& w, const Run& run) {
    return check_impl(a, w, run);
}
CertificateCheck check_certificate(const Automaton& a, const Word& w, const Run& run) {
    return std::visit([&](const auto& x) { return check_certificate(x, w, run); }, a);
}

std::set<Word> enumerate_language(const Automaton& a, int max_len,
                                  const std::vector<Letter>& pool) {
    require_valid(a);
    std::vector<Letter> p = dedup_pool(pool);
    std::set<Word> out;
    Word w;
    auto check = [&](const Word& word) {
        if (decide_membership(a, word).accepted) out.insert(word);
    };
    check(w);
    for (int len = 1; len <= max_len; ++len) {
        if (p.empty()) break;
        std::vector<std::size_t> odo(len, 0);
        while (true) {
            w.clear();
            for (std::size_t i : odo) w.push_back(p[i]);
            check(w);
            int pos = len - 1;
            while (pos >= 0 && ++odo[pos] == p.size()) odo[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return out;
}

std::optional<Word> accepts_word_over(const Automaton& a, const std::vector<Letter>& pool,
                                      long max_len) {
    require_valid(a);
    std::vector<Letter> p = dedup_pool(pool);
    return std::visit([&](const auto& x) { return probe_impl(x, p, max_len); }, a);
}

std::vector<bool> decide_membership_batch_serial(const Automaton& a,
                                                 const std::vector<Word>& words) {
    require_valid(a);
    std::vector<bool> out(words.size());
    std::visit(
        [&](const auto& x) {
            for (std::size_t i = 0; i < words.size(); ++i)
                out[i] = search_word(x, words[i]).accepted;
        },
        a);
    return out;
}

std::vector<bool> decide_membership_batch(const Automaton& a, const std::vector<Word>& words) {
    require_valid(a);
    std::vector<char> flags(words.size(), 0);
    std::visit(
        [&](const auto& x) {
#pragma omp parallel for schedule(dynamic, 16)
            for (long i = 0; i < long(words.size()); ++i)
                flags[i] = search_word(x, words[i]).accepted ? 1 : 0;
        },
        a);
    return std::vector<bool>(flags.begin(), flags.end());
}

} // namespace mema
