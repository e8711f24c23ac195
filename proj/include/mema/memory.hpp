#pragma once

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mema/letter.hpp"

namespace mema {

/// Identifier of a memory variable or history. Layer is 1 for nu-automaton
/// variables and HRA histories, in [1,n] for an n-layered automaton.
struct VariableId {
    std::string name;
    int layer = 1;

    bool operator==(const VariableId&) const = default;
    std::strong_ordering operator<=>(const VariableId& other) const {
        if (layer != other.layer) return layer <=> other.layer;
        int c = name.compare(other.name);
        if (c == 0) return std::strong_ordering::equal;
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
};

/// Finite map variable -> finite letter set. Slots are kept sorted by
/// (layer, name) and letter sets by text, so equal contexts compare and hash
/// equal and serialize identically.
class MemoryContext {
public:
    MemoryContext() = default;

    /// Context with the given domain, every set empty.
    static MemoryContext over(std::span<const VariableId> domain);

    bool has(const VariableId& v) const;
    /// Throws DomainError when v is not in the domain.
    const LetterSet& at(const VariableId& v) const;

    /// Inserts or replaces a slot.
    void assign(const VariableId& v, LetterSet letters);
    /// Throws DomainError when v is not in the domain.
    void add(const VariableId& v, Letter u);
    void remove(const VariableId& v, Letter u);
    void clear(const VariableId& v);

    std::span<const std::pair<VariableId, LetterSet>> slots() const { return slots_; }
    std::size_t size() const { return slots_.size(); }

    bool operator==(const MemoryContext&) const = default;
    auto operator<=>(const MemoryContext&) const = default;

    /// Stable across processes (hashes names and letter texts).
    std::size_t hash() const;

private:
    LetterSet& slot(const VariableId& v);
    std::vector<std::pair<VariableId, LetterSet>> slots_;
};

/// True iff distinct variables on `layer` share no letter.
/// Throws DomainError when no variable of that layer exists.
bool layer_injective(const MemoryContext& m, int layer);

/// Copy of `m` with every variable in `rset` emptied.
/// Throws DomainError on variables outside the domain.
MemoryContext apply_reset(const MemoryContext& m, std::span<const VariableId> rset);

struct Configuration {
    int state = 0;
    MemoryContext memory;

    bool operator==(const Configuration&) const = default;
    auto operator<=>(const Configuration&) const = default;
    std::size_t hash() const { return hash_mix(memory.hash(), std::size_t(state)); }
};

} // namespace mema

template <>
struct std::hash<mema::Configuration> {
    std::size_t operator()(const mema::Configuration& c) const noexcept { return c.hash(); }
};
