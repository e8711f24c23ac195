#include "mema/letter.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace mema {

namespace {

// Node-based set gives stable addresses for interned strings.
struct Interner {
    std::mutex mutex;
    std::unordered_set<std::string> tokens;
};

Interner& interner() {
    static Interner instance;
    return instance;
}

} // namespace

Letter Letter::intern(std::string_view token) {
    if (token.empty())
        throw FormatError("letter token must be nonempty");
    for (unsigned char c : token)
        if (std::isspace(c))
            throw FormatError("letter token must not contain whitespace: \"" +
                              std::string(token) + "\"");
    Interner& in = interner();
    std::lock_guard<std::mutex> lock(in.mutex);
    auto [it, inserted] = in.tokens.emplace(token);
    return Letter(&*it);
}

LetterSet::LetterSet(std::initializer_list<Letter> items) {
    for (Letter u : items) insert(u);
}

bool LetterSet::contains(Letter u) const {
    return std::binary_search(items_.begin(), items_.end(), u);
}

bool LetterSet::insert(Letter u) {
    auto it = std::lower_bound(items_.begin(), items_.end(), u);
    if (it != items_.end() && *it == u) return false;
    items_.insert(it, u);
    return true;
}

bool LetterSet::erase(Letter u) {
    auto it = std::lower_bound(items_.begin(), items_.end(), u);
    if (it == items_.end() || *it != u) return false;
    items_.erase(it);
    return true;
}

Letter fresh_letter(const LetterSet& avoid) {
    for (unsigned long k = 0;; ++k) {
        Letter candidate = Letter::intern("τ" + std::to_string(k));
        if (!avoid.contains(candidate)) return candidate;
    }
}

Word parse_word(std::string_view line) {
    Word w;
    if (line.empty()) return w;
    std::size_t start = 0;
    while (true) {
        std::size_t space = line.find(' ', start);
        std::string_view token = line.substr(start, space == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : space - start);
        if (token.empty())
            throw FormatError("empty letter in word (doubled or trailing space)");
        w.push_back(Letter::intern(token));
        if (space == std::string_view::npos) break;
        start = space + 1;
    }
    return w;
}

std::string format_word(const Word& w) {
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out << ' ';
        out << w[i].text();
    }
    return out.str();
}

std::size_t stable_hash(std::string_view bytes) {
    std::size_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace mema
