#include "mema/corpus.hpp"

#include <string>

#include "mema/errors.hpp"

namespace mema {

namespace {

LayerAction act(const char* name, int layer, Mode mode) {
    return LayerAction{{VariableId{name, layer}, mode}};
}

} // namespace

Lama fig2_lp() {
    Lama a;
    a.states = {"q1", "q2", "q3", "q4", "q5", "q6"};
    a.initial = 0;
    a.finals = {0, 1, 2, 3, 4, 5};
    a.layers = 2;
    a.variables = {{"X", 1}, {"Y", 2}};
    a.initial_memory = MemoryContext::over(a.variables);
    auto obs = [&](int from, int to, LayerAction l1, LayerAction l2) {
        a.transitions.push_back({LamaTransition::Kind::Obs, from, to, {l1, l2}, {}});
    };
    obs(0, 1, std::nullopt, std::nullopt);
    obs(1, 2, act("X", 1, Mode::Write), std::nullopt);
    obs(2, 3, std::nullopt, act("Y", 2, Mode::Write));
    obs(3, 4, act("X", 1, Mode::Write), std::nullopt);
    obs(4, 5, std::nullopt, std::nullopt);
    obs(5, 0, act("X", 1, Mode::Write), act("Y", 2, Mode::Write));
    return a;
}

Hra fig3_hra() {
    Hra a;
    a.states = {"q_ow", "q_ew", "q_er", "q_or"};
    a.initial = 0;
    a.finals = {2, 3};
    a.histories = {{"O", 1}, {"E", 1}};
    a.initial_memory = MemoryContext::over(a.histories);
    const VariableId O{"O", 1}, E{"E", 1};
    auto obs = [&](int from, std::vector<VariableId> read, std::vector<VariableId> write,
                   int to) {
        a.transitions.push_back(
            {HraTransition::Kind::Obs, from, to, std::move(read), std::move(write), {}});
    };
    obs(0, {}, {O}, 1);  // q_ow -> q_ew, fresh letter into O
    obs(1, {}, {E}, 0);  // q_ew -> q_ow, fresh letter into E
    obs(0, {E}, {O}, 2); // q_ow -> q_er, transfer E -> O
    obs(1, {O}, {E}, 3); // q_ew -> q_or, transfer O -> E
    obs(3, {E}, {O}, 2); // q_or -> q_er
    obs(2, {O}, {E}, 3); // q_er -> q_or
    return a;
}

Lama double_exp(int n) {
    if (n < 3) throw UsageError("double_exp needs at least 3 layers");
    Lama a;
    a.layers = n;
    a.variables = {{"X", 1}, {"Y", 2}, {"Z", 2}};
    for (int k = 3; k <= n; ++k) a.variables.push_back({"A" + std::to_string(k), k});
    a.initial_memory = MemoryContext::over(a.variables);

    for (int s = 0; s < 2 * n; ++s) a.states.push_back("q" + std::to_string(s));
    a.states.push_back("qm");
    a.states.push_back("qf");
    const int qm = 2 * n;
    const int qf = 2 * n + 1;
    a.initial = 0;
    a.finals = {qf};

    auto alpha = [&](std::initializer_list<LayerAction> actions) {
        std::vector<LayerAction> v(n, std::nullopt);
        for (const LayerAction& action : actions)
            if (action) v[action->first.layer - 1] = action;
        return v;
    };
    auto obs = [&](int from, int to, std::initializer_list<LayerAction> actions) {
        a.transitions.push_back({LamaTransition::Kind::Obs, from, to, alpha(actions), {}});
    };
    auto reset = [&](int from, int to, std::vector<VariableId> vars) {
        a.transitions.push_back({LamaTransition::Kind::Reset, from, to, {}, std::move(vars)});
    };

    // write phase, then the halving loop
    obs(0, 0, {act("X", 1, Mode::Write)});
    reset(0, 1, {});
    obs(1, 2, {act("X", 1, Mode::Read), act("Y", 2, Mode::Write)});
    obs(2, 1, {act("X", 1, Mode::Read), act("Z", 2, Mode::Write)});
    reset(1, 3, {{"X", 1}});
    obs(3, 3, {act("X", 1, Mode::Write), act("Y", 2, Mode::Read)});
    reset(3, 4, {{"Y", 2}, {"Z", 2}});

    // counter chain: test state of bit k advances on a read, or sets the bit
    // and loops back clearing the bits below
    for (int k = 3; k <= n; ++k) {
        int test = 2 * (k - 1);    // q4, q6, ...
        int set = 2 * (k - 1) + 1; // q5, q7, ...
        std::string name = "A" + std::to_string(k);
        obs(test, set, {act(name.c_str(), k, Mode::Write)});
        obs(test, k == n ? qm : 2 * k, {act(name.c_str(), k, Mode::Read)});
        std::vector<VariableId> lower;
        for (int l = 3; l < k; ++l) lower.push_back({"A" + std::to_string(l), l});
        reset(set, 1, std::move(lower));
    }
    obs(qm, qf, {act("X", 1, Mode::Read)});
    return a;
}

Word double_exp_word(int n, long phase1_letters) {
    if (n < 3 || n > 5) throw UsageError("double_exp witness supported for 3 <= n <= 5");
    Word w;
    std::vector<Letter> survivors;
    for (long i = 0; i < phase1_letters; ++i) {
        Letter u = Letter::intern("u" + std::to_string(i));
        survivors.push_back(u);
        w.push_back(u);
    }

    std::vector<Letter> counter_content(n + 1, Letter::intern("u0")); // per bit, valid when set
    long counter = 0;
    long next_token = 0;
    const long passes = 1L << (n - 2);
    for (long pass = 1; pass <= passes; ++pass) {
        // split the current letters half into Y, half into Z, replay the Y half
        long pairs = long(survivors.size()) / 2;
        for (long i = 0; i < 2 * pairs; ++i) w.push_back(survivors[i]);
        std::vector<Letter> kept;
        for (long i = 0; i < pairs; ++i) {
            w.push_back(survivors[2 * i]);
            kept.push_back(survivors[2 * i]);
        }
        survivors = std::move(kept);

        if (pass < passes) {
            // increment: read the set bits below the lowest clear one, set it
            int bit = 3;
            while (counter & (1L << bit)) {
                w.push_back(counter_content[bit]);
                counter &= ~(1L << bit);
                ++bit;
            }
            Letter token = Letter::intern("a" + std::to_string(next_token++));
            w.push_back(token);
            counter_content[bit] = token;
            counter |= 1L << bit;
        } else {
            // all bits set: the read chain to the final states
            for (int bit = 3; bit <= n; ++bit) w.push_back(counter_content[bit]);
        }
    }
    w.push_back(survivors.empty() ? Letter::intern("u0") : survivors.front());
    return w;
}

Word double_exp_witness(int n) {
    if (n < 3 || n > 5) throw UsageError("double_exp witness supported for 3 <= n <= 5");
    return double_exp_word(n, 1L << (1L << (n - 2)));
}

} // namespace mema
