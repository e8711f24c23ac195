#include "mema/json_io.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

#include "mema/errors.hpp"

namespace mema {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
}

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    return j.get<int>();
}

void check_fields(const json& j, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    if (!j.is_object()) bad(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return it.key() == k;
            }) == allowed.end())
            bad(path + "." + it.key(), "unknown field");
}

Letter letter_at(const json& j, const std::string& path) {
    try {
        return Letter::intern(get_string(j, path));
    } catch (const FormatError& e) {
        bad(path, e.what());
    }
}

struct StateTable {
    std::vector<std::string> names;
    int index(const std::string& name, const std::string& path) const {
        for (int i = 0; i < int(names.size()); ++i)
            if (names[i] == name) return i;
        bad(path, "unknown state \"" + name + "\"");
    }
};

struct VarTable {
    std::vector<VariableId> vars;
    const VariableId& by_name(const std::string& name, const std::string& path) const {
        for (const auto& v : vars)
            if (v.name == name) return v;
        bad(path, "unknown variable \"" + name + "\"");
    }
};

template <class A>
void load_common(A& a, StateTable& st, const json& j, const std::string& path) {
    const json& states = field(j, path, "states");
    if (!states.is_array()) bad(path + ".states", "expected an array");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < states.size(); ++i) {
        std::string name = get_string(states[i], path + ".states[" + std::to_string(i) + "]");
        if (!seen.insert(name).second)
            bad(path + ".states[" + std::to_string(i) + "]", "duplicate state \"" + name + "\"");
        a.states.push_back(std::move(name));
    }
    st.names = a.states;
    a.initial = st.index(get_string(field(j, path, "initial"), path + ".initial"), path + ".initial");
    const json& finals = field(j, path, "final");
    if (!finals.is_array()) bad(path + ".final", "expected an array");
    for (std::size_t i = 0; i < finals.size(); ++i)
        a.finals.push_back(st.index(get_string(finals[i], path + ".final[" + std::to_string(i) + "]"),
                                    path + ".final[" + std::to_string(i) + "]"));
    std::sort(a.finals.begin(), a.finals.end());
    a.finals.erase(std::unique(a.finals.begin(), a.finals.end()), a.finals.end());
}

MemoryContext load_memory(const json& j, const std::string& path, const VarTable& vt) {
    MemoryContext m = MemoryContext::over(vt.vars);
    if (j.is_null()) return m;
    if (!j.is_object()) bad(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const VariableId& v = vt.by_name(it.key(), path + "." + it.key());
        if (!it.value().is_array()) bad(path + "." + it.key(), "expected an array");
        LetterSet s;
        for (std::size_t i = 0; i < it.value().size(); ++i)
            s.insert(letter_at(it.value()[i], path + "." + it.key() + "[" + std::to_string(i) + "]"));
        m.assign(v, std::move(s));
    }
    return m;
}

std::vector<VariableId> load_var_list(const json& j, const std::string& path,
                                      const VarTable& vt) {
    if (!j.is_array()) bad(path, "expected an array");
    std::vector<VariableId> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(vt.by_name(get_string(j[i], path + "[" + std::to_string(i) + "]"),
                                 path + "[" + std::to_string(i) + "]"));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

NuAutomaton load_nu(const json& j) {
    const std::string path = "$";
    check_fields(j, path, {"formalism", "states", "initial", "final", "initial_memory",
                           "variables", "transitions"});
    NuAutomaton a;
    StateTable st;
    load_common(a, st, j, path);
    const json& vars = field(j, path, "variables");
    if (!vars.is_array()) bad(path + ".variables", "expected an array");
    for (std::size_t i = 0; i < vars.size(); ++i)
        a.variables.push_back(
            {get_string(vars[i], path + ".variables[" + std::to_string(i) + "]"), 1});
    VarTable vt{a.variables};
    a.initial_memory = load_memory(j.contains("initial_memory") ? j["initial_memory"] : json(),
                                   path + ".initial_memory", vt);
    const json& ts = field(j, path, "transitions");
    if (!ts.is_array()) bad(path + ".transitions", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::string tp = path + ".transitions[" + std::to_string(i) + "]";
        const json& t = ts[i];
        std::string kind = get_string(field(t, tp, "kind"), tp + ".kind");
        NuTransition out;
        if (kind == "read" || kind == "write") {
            check_fields(t, tp, {"kind", "from", "to", "var"});
            out.kind = kind == "read" ? NuTransition::Kind::Read : NuTransition::Kind::Write;
            out.var = vt.by_name(get_string(field(t, tp, "var"), tp + ".var"), tp + ".var");
        } else if (kind == "any") {
            check_fields(t, tp, {"kind", "from", "to"});
            out.kind = NuTransition::Kind::Any;
        } else if (kind == "reset") {
            check_fields(t, tp, {"kind", "from", "to", "vars"});
            out.kind = NuTransition::Kind::Reset;
            out.reset = load_var_list(field(t, tp, "vars"), tp + ".vars", vt);
        } else {
            bad(tp + ".kind", "unknown transition kind \"" + kind + "\"");
        }
        out.from = st.index(get_string(field(t, tp, "from"), tp + ".from"), tp + ".from");
        out.to = st.index(get_string(field(t, tp, "to"), tp + ".to"), tp + ".to");
        a.transitions.push_back(std::move(out));
    }
    return a;
}

Lama load_lama(const json& j) {
    const std::string path = "$";
    check_fields(j, path, {"formalism", "states", "initial", "final", "initial_memory",
                           "layers", "variables", "transitions"});
    Lama a;
    StateTable st;
    load_common(a, st, j, path);
    a.layers = get_int(field(j, path, "layers"), path + ".layers");
    const json& vars = field(j, path, "variables");
    if (!vars.is_array()) bad(path + ".variables", "expected an array");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        std::string vp = path + ".variables[" + std::to_string(i) + "]";
        check_fields(vars[i], vp, {"name", "layer"});
        a.variables.push_back({get_string(field(vars[i], vp, "name"), vp + ".name"),
                               get_int(field(vars[i], vp, "layer"), vp + ".layer")});
    }
    VarTable vt{a.variables};
    a.initial_memory = load_memory(j.contains("initial_memory") ? j["initial_memory"] : json(),
                                   path + ".initial_memory", vt);
    const json& ts = field(j, path, "transitions");
    if (!ts.is_array()) bad(path + ".transitions", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::string tp = path + ".transitions[" + std::to_string(i) + "]";
        const json& t = ts[i];
        std::string kind = get_string(field(t, tp, "kind"), tp + ".kind");
        LamaTransition out;
        if (kind == "obs") {
            check_fields(t, tp, {"kind", "from", "to", "alpha"});
            out.kind = LamaTransition::Kind::Obs;
            out.alpha.assign(std::max(a.layers, 0), std::nullopt);
            if (t.contains("alpha")) {
                const json& alpha = t["alpha"];
                if (!alpha.is_object()) bad(tp + ".alpha", "expected an object");
                for (auto it = alpha.begin(); it != alpha.end(); ++it) {
                    std::string ap = tp + ".alpha." + it.key();
                    int layer = 0;
                    try {
                        std::size_t used = 0;
                        layer = std::stoi(it.key(), &used);
                        if (used != it.key().size()) bad(ap, "layer key must be an integer");
                    } catch (const std::exception&) {
                        bad(ap, "layer key must be an integer");
                    }
                    if (layer < 1 || layer > a.layers) bad(ap, "layer outside [1, layers]");
                    if (it.value().is_null()) continue; // explicit any-letter marker
                    check_fields(it.value(), ap, {"var", "mode"});
                    std::string mode = get_string(field(it.value(), ap, "mode"), ap + ".mode");
                    if (mode != "r" && mode != "w") bad(ap + ".mode", "mode must be \"r\" or \"w\"");
                    out.alpha[layer - 1] = {
                        vt.by_name(get_string(field(it.value(), ap, "var"), ap + ".var"), ap + ".var"),
                        mode == "r" ? Mode::Read : Mode::Write};
                }
            }
        } else if (kind == "reset") {
            check_fields(t, tp, {"kind", "from", "to", "vars"});
            out.kind = LamaTransition::Kind::Reset;
            out.reset = load_var_list(field(t, tp, "vars"), tp + ".vars", vt);
        } else {
            bad(tp + ".kind", "unknown transition kind \"" + kind + "\"");
        }
        out.from = st.index(get_string(field(t, tp, "from"), tp + ".from"), tp + ".from");
        out.to = st.index(get_string(field(t, tp, "to"), tp + ".to"), tp + ".to");
        a.transitions.push_back(std::move(out));
    }
    return a;
}

Hra load_hra(const json& j) {
    const std::string path = "$";
    check_fields(j, path, {"formalism", "states", "initial", "final", "initial_memory",
                           "histories", "transitions"});
    Hra a;
    StateTable st;
    load_common(a, st, j, path);
    const json& hs = field(j, path, "histories");
    if (!hs.is_array()) bad(path + ".histories", "expected an array");
    for (std::size_t i = 0; i < hs.size(); ++i)
        a.histories.push_back(
            {get_string(hs[i], path + ".histories[" + std::to_string(i) + "]"), 1});
    VarTable vt{a.histories};
    a.initial_memory = load_memory(j.contains("initial_memory") ? j["initial_memory"] : json(),
                                   path + ".initial_memory", vt);
    const json& ts = field(j, path, "transitions");
    if (!ts.is_array()) bad(path + ".transitions", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::string tp = path + ".transitions[" + std::to_string(i) + "]";
        const json& t = ts[i];
        std::string kind = get_string(field(t, tp, "kind"), tp + ".kind");
        HraTransition out;
        if (kind == "obs") {
            check_fields(t, tp, {"kind", "from", "to", "read", "write"});
            out.kind = HraTransition::Kind::Obs;
            out.read = load_var_list(field(t, tp, "read"), tp + ".read", vt);
            out.write = load_var_list(field(t, tp, "write"), tp + ".write", vt);
        } else if (kind == "eps") {
            check_fields(t, tp, {"kind", "from", "to", "reset"});
            out.kind = HraTransition::Kind::Eps;
            out.reset = load_var_list(field(t, tp, "reset"), tp + ".reset", vt);
        } else {
            bad(tp + ".kind", "unknown transition kind \"" + kind + "\"");
        }
        out.from = st.index(get_string(field(t, tp, "from"), tp + ".from"), tp + ".from");
        out.to = st.index(get_string(field(t, tp, "to"), tp + ".to"), tp + ".to");
        a.transitions.push_back(std::move(out));
    }
    return a;
}

json memory_to_json(const MemoryContext& m) {
    json out = json::object();
    for (const auto& [v, letters] : m.slots()) {
        json arr = json::array();
        for (Letter u : letters) arr.push_back(u.text());
        out[v.name] = std::move(arr);
    }
    return out;
}

template <class A>
void dump_common(const A& a, json& j) {
    j["states"] = a.states;
    j["initial"] = a.states[a.initial];
    json finals = json::array();
    for (int f : a.finals) finals.push_back(a.states[f]);
    j["final"] = std::move(finals);
    j["initial_memory"] = memory_to_json(a.initial_memory);
}

json dump_nu(const NuAutomaton& a) {
    json j;
    j["formalism"] = "nu";
    dump_common(a, j);
    json vars = json::array();
    for (const auto& v : a.variables) vars.push_back(v.name);
    j["variables"] = std::move(vars);
    json ts = json::array();
    for (const auto& t : a.transitions) {
        json e;
        e["from"] = a.states[t.from];
        e["to"] = a.states[t.to];
        switch (t.kind) {
            case NuTransition::Kind::Read: e["kind"] = "read"; e["var"] = t.var.name; break;
            case NuTransition::Kind::Write: e["kind"] = "write"; e["var"] = t.var.name; break;
            case NuTransition::Kind::Any: e["kind"] = "any"; break;
            case NuTransition::Kind::Reset: {
                e["kind"] = "reset";
                json vs = json::array();
                for (const auto& v : t.reset) vs.push_back(v.name);
                e["vars"] = std::move(vs);
                break;
            }
        }
        ts.push_back(std::move(e));
    }
    j["transitions"] = std::move(ts);
    return j;
}

json dump_lama(const Lama& a) {
    json j;
    j["formalism"] = "lama";
    dump_common(a, j);
    j["layers"] = a.layers;
    json vars = json::array();
    for (const auto& v : a.variables) vars.push_back({{"name", v.name}, {"layer", v.layer}});
    j["variables"] = std::move(vars);
    json ts = json::array();
    for (const auto& t : a.transitions) {
        json e;
        e["from"] = a.states[t.from];
        e["to"] = a.states[t.to];
        if (t.kind == LamaTransition::Kind::Obs) {
            e["kind"] = "obs";
            json alpha = json::object();
            for (int l = 1; l <= int(t.alpha.size()); ++l)
                if (t.alpha[l - 1])
                    alpha[std::to_string(l)] = {
                        {"var", t.alpha[l - 1]->first.name},
                        {"mode", t.alpha[l - 1]->second == Mode::Read ? "r" : "w"}};
            e["alpha"] = std::move(alpha);
        } else {
            e["kind"] = "reset";
            json vs = json::array();
            for (const auto& v : t.reset) vs.push_back(v.name);
            e["vars"] = std::move(vs);
        }
        ts.push_back(std::move(e));
    }
    j["transitions"] = std::move(ts);
    return j;
}

json dump_hra(const Hra& a) {
    json j;
    j["formalism"] = "hra";
    dump_common(a, j);
    json hs = json::array();
    for (const auto& h : a.histories) hs.push_back(h.name);
    j["histories"] = std::move(hs);
    json ts = json::array();
    for (const auto& t : a.transitions) {
        json e;
        e["from"] = a.states[t.from];
        e["to"] = a.states[t.to];
        auto names = [](const std::vector<VariableId>& vs) {
            json arr = json::array();
            for (const auto& v : vs) arr.push_back(v.name);
            return arr;
        };
        if (t.kind == HraTransition::Kind::Obs) {
            e["kind"] = "obs";
            e["read"] = names(t.read);
            e["write"] = names(t.write);
        } else {
            e["kind"] = "eps";
            e["reset"] = names(t.reset);
        }
        ts.push_back(std::move(e));
    }
    j["transitions"] = std::move(ts);
    return j;
}

template <class A>
const std::vector<VariableId>& domain_of(const A& a) {
    return a.variables;
}
const std::vector<VariableId>& domain_of(const Hra& a) { return a.histories; }

} // namespace

json automaton_to_json(const Automaton& a) {
    return std::visit(
        [](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, NuAutomaton>) return dump_nu(x);
            else if constexpr (std::is_same_v<T, Lama>) return dump_lama(x);
            else return dump_hra(x);
        },
        a);
}

Automaton automaton_from_json(const json& j) {
    if (!j.is_object()) bad("$", "expected an object");
    std::string formalism = get_string(field(j, "$", "formalism"), "$.formalism");
    if (formalism == "nu") return load_nu(j);
    if (formalism == "lama") return load_lama(j);
    if (formalism == "hra") return load_hra(j);
    bad("$.formalism", "unknown formalism \"" + formalism + "\"");
}

json run_to_json(const Automaton& a, const Run& run) {
    return std::visit(
        [&](const auto& x) {
            json out = json::array();
            for (std::size_t i = 0; i < run.configs.size(); ++i) {
                json c;
                c["state"] = x.states.at(run.configs[i].state);
                c["memory"] = memory_to_json(run.configs[i].memory);
                out.push_back(std::move(c));
                if (i < run.steps.size()) {
                    json s;
                    s["transition_index"] = run.steps[i].transition;
                    s["letter"] = run.steps[i].letter ? json(run.steps[i].letter->text()) : json();
                    out.push_back(std::move(s));
                }
            }
            return out;
        },
        a);
}

Run run_from_json(const Automaton& a, const json& j) {
    if (!j.is_array() || j.size() % 2 == 0)
        bad("$", "run must be an array alternating configurations and transitions");
    return std::visit(
        [&](const auto& x) {
            Run run;
            VarTable vt{domain_of(x)};
            for (std::size_t i = 0; i < j.size(); ++i) {
                std::string p = "$[" + std::to_string(i) + "]";
                if (i % 2 == 0) {
                    check_fields(j[i], p, {"state", "memory"});
                    Configuration c;
                    std::string name = get_string(field(j[i], p, "state"), p + ".state");
                    int q = x.state_index(name);
                    if (q < 0) bad(p + ".state", "unknown state \"" + name + "\"");
                    c.state = q;
                    c.memory = load_memory(field(j[i], p, "memory"), p + ".memory", vt);
                    run.configs.push_back(std::move(c));
                } else {
                    check_fields(j[i], p, {"transition_index", "letter"});
                    RunStep s;
                    s.transition = get_int(field(j[i], p, "transition_index"),
                                           p + ".transition_index");
                    const json& letter = field(j[i], p, "letter");
                    if (!letter.is_null()) s.letter = letter_at(letter, p + ".letter");
                    run.steps.push_back(std::move(s));
                }
            }
            return run;
        },
        a);
}

std::string to_dot(const Automaton& a) {
    std::ostringstream out;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
            out << "  __start [shape=point];\n";
            for (int i = 0; i < int(x.states.size()); ++i)
                out << "  \"" << x.states[i] << "\""
                    << (x.is_final(i) ? " [shape=doublecircle];\n" : ";\n");
            out << "  __start -> \"" << x.states[x.initial] << "\";\n";
            auto var_list = [](const std::vector<VariableId>& vs) {
                std::string s = "{";
                for (std::size_t i = 0; i < vs.size(); ++i)
                    s += (i ? "," : "") + vs[i].name;
                return s + "}";
            };
            for (const auto& t : x.transitions) {
                std::string label;
                if constexpr (std::is_same_v<T, NuAutomaton>) {
                    switch (t.kind) {
                        case NuTransition::Kind::Read: label = t.var.name + ",R"; break;
                        case NuTransition::Kind::Write: label = t.var.name + ",W"; break;
                        case NuTransition::Kind::Any: label = "#"; break;
                        case NuTransition::Kind::Reset: label = "reset " + var_list(t.reset); break;
                    }
                } else if constexpr (std::is_same_v<T, Lama>) {
                    if (t.kind == LamaTransition::Kind::Obs) {
                        for (int l = 1; l <= int(t.alpha.size()); ++l) {
                            if (l > 1) label += " ";
                            label += std::to_string(l) + ":";
                            label += t.alpha[l - 1]
                                         ? "(" + t.alpha[l - 1]->first.name + "," +
                                               (t.alpha[l - 1]->second == Mode::Read ? "R" : "W") + ")"
                                         : std::string("#");
                        }
                    } else {
                        label = "reset " + var_list(t.reset);
                    }
                } else {
                    if (t.kind == HraTransition::Kind::Obs)
                        label = var_list(t.read) + "/" + var_list(t.write);
                    else
                        label = "reset " + var_list(t.reset);
                }
                out << "  \"" << x.states[t.from] << "\" -> \"" << x.states[t.to]
                    << "\" [label=\"" << label << "\"];\n";
            }
            out << "}\n";
        },
        a);
    return out.str();
}

Automaton read_automaton(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return automaton_from_json(j);
}

} // namespace mema
