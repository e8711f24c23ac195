#include "mema/memory.hpp"

#include <algorithm>

#include "mema/errors.hpp"

namespace mema {

namespace {

auto slot_less = [](const std::pair<VariableId, LetterSet>& slot, const VariableId& v) {
    return slot.first < v;
};

} // namespace

MemoryContext MemoryContext::over(std::span<const VariableId> domain) {
    MemoryContext m;
    for (const VariableId& v : domain) m.assign(v, {});
    return m;
}

bool MemoryContext::has(const VariableId& v) const {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), v, slot_less);
    return it != slots_.end() && it->first == v;
}

const LetterSet& MemoryContext::at(const VariableId& v) const {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), v, slot_less);
    if (it == slots_.end() || !(it->first == v))
        throw DomainError("variable " + v.name + " (layer " + std::to_string(v.layer) +
                          ") not in memory context");
    return it->second;
}

LetterSet& MemoryContext::slot(const VariableId& v) {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), v, slot_less);
    if (it == slots_.end() || !(it->first == v))
        throw DomainError("variable " + v.name + " (layer " + std::to_string(v.layer) +
                          ") not in memory context");
    return it->second;
}

void MemoryContext::assign(const VariableId& v, LetterSet letters) {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), v, slot_less);
    if (it != slots_.end() && it->first == v)
        it->second = std::move(letters);
    else
        slots_.insert(it, {v, std::move(letters)});
}

void MemoryContext::add(const VariableId& v, Letter u) { slot(v).insert(u); }
void MemoryContext::remove(const VariableId& v, Letter u) { slot(v).erase(u); }
void MemoryContext::clear(const VariableId& v) { slot(v).clear(); }

std::size_t MemoryContext::hash() const {
    std::size_t h = 0x811c9dc5;
    for (const auto& [v, letters] : slots_) {
        h = hash_mix(h, stable_hash(v.name));
        h = hash_mix(h, std::size_t(v.layer));
        for (Letter u : letters) h = hash_mix(h, stable_hash(u.text()));
    }
    return h;
}

bool layer_injective(const MemoryContext& m, int layer) {
    std::vector<const LetterSet*> sets;
    for (const auto& [v, letters] : m.slots())
        if (v.layer == layer) sets.push_back(&letters);
    if (sets.empty())
        throw DomainError("no variable on layer " + std::to_string(layer));
    LetterSet seen;
    for (const LetterSet* s : sets)
        for (Letter u : *s)
            if (!seen.insert(u)) return false;
    return true;
}

MemoryContext apply_reset(const MemoryContext& m, std::span<const VariableId> rset) {
    MemoryContext out = m;
    for (const VariableId& v : rset) out.clear(v);
    return out;
}

} // namespace mema
