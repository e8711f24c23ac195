#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "mema/errors.hpp"

namespace mema {

/// A symbol of the infinite alphabet. Letters are interned: the same token
/// text always yields the same handle, so equality is a pointer compare.
/// Ordering is lexicographic on the token text (used for canonical layouts).
class Letter {
public:
    /// Interns a token. Throws FormatError if the token is empty or contains
    /// whitespace.
    static Letter intern(std::string_view token);

    const std::string& text() const { return *text_; }

    bool operator==(const Letter&) const = default;
    std::strong_ordering operator<=>(const Letter& other) const {
        if (text_ == other.text_) return std::strong_ordering::equal;
        return text_->compare(*other.text_) < 0 ? std::strong_ordering::less
                                                : std::strong_ordering::greater;
    }

    const void* id() const { return text_; }

private:
    explicit Letter(const std::string* text) : text_(text) {}
    const std::string* text_;
};

using Word = std::vector<Letter>;

/// Set of letters kept sorted by token text. Value semantics.
class LetterSet {
public:
    LetterSet() = default;
    LetterSet(std::initializer_list<Letter> items);

    bool contains(Letter u) const;
    /// Returns false if already present.
    bool insert(Letter u);
    /// Returns false if absent.
    bool erase(Letter u);
    void clear() { items_.clear(); }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    bool operator==(const LetterSet&) const = default;
    auto operator<=>(const LetterSet&) const = default;

private:
    std::vector<Letter> items_;
};

/// Deterministic machine-generated letter outside `avoid`: "τ<k>" with the
/// smallest unused counter. The "τ" prefix is reserved for generated letters.
Letter fresh_letter(const LetterSet& avoid);

/// One word per line, letters separated by single spaces; the empty line is
/// the empty word. Throws FormatError on empty tokens (doubled spaces).
Word parse_word(std::string_view line);
std::string format_word(const Word& w);

/// FNV-1a over bytes; stable across processes, used for canonical hashing.
std::size_t stable_hash(std::string_view bytes);
inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace mema

template <>
struct std::hash<mema::Letter> {
    std::size_t operator()(const mema::Letter& u) const noexcept {
        return std::hash<const void*>()(u.id());
    }
};
