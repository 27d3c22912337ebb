// Symmetric alphabets: letters paired by a fixed-point-free involution, plus
// optional primed letters ("a'") that project to a base letter but have no
// inverse of their own. Letter order is the index order, which fixes short-lex.
#ifndef GROWTH_ALPHABET_HPP
#define GROWTH_ALPHABET_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace growth {

using Word = std::vector<int>;  // letter indices

class Alphabet {
public:
    Alphabet() = default;

    /// Standard free-group alphabet of rank r: a < A < b < B < ...
    /// (lowercase = generator, uppercase = its inverse).
    static Alphabet free_group(int rank) {
        if (rank < 1 || rank > 26) throw Error(Errc::malformed_input, "rank must be in [1,26]");
        Alphabet a;
        for (int i = 0; i < rank; ++i) {
            a.add_letter(std::string(1, static_cast<char>('a' + i)));
            a.add_letter(std::string(1, static_cast<char>('A' + i)));
            a.inverse_[2 * i] = 2 * i + 1;
            a.inverse_[2 * i + 1] = 2 * i;
        }
        a.check();
        return a;
    }

    static Alphabet from_parts(const std::vector<std::string>& letters,
                               const std::vector<std::pair<std::string, std::string>>& involution,
                               const std::map<std::string, std::string>& primes) {
        Alphabet a;
        for (const auto& s : letters) a.add_letter(s);
        for (const auto& [x, y] : involution) {
            int i = a.index_of(x), j = a.index_of(y);
            if (i < 0 || j < 0) throw Error(Errc::malformed_input, "involution names unknown letter");
            if (i == j) throw Error(Errc::malformed_input, "involution must be fixed-point-free");
            a.inverse_[i] = j;
            a.inverse_[j] = i;
        }
        for (const auto& [primed, base] : primes) {
            int p = a.index_of(primed), b = a.index_of(base);
            if (p < 0 || b < 0) throw Error(Errc::malformed_input, "prime map names unknown letter");
            if (p == b) throw Error(Errc::malformed_input, "primed letter must differ from its base");
            a.base_[p] = b;
        }
        a.check();
        return a;
    }

    int size() const { return static_cast<int>(letters_.size()); }
    const std::string& letter(int i) const { return letters_[i]; }

    int index_of(const std::string& s) const {
        auto it = index_.find(s);
        return it == index_.end() ? -1 : it->second;
    }

    bool is_primed(int i) const { return base_[i] != i; }
    int base(int i) const { return base_[i]; }

    /// Inverse of an undecorated letter; primed letters have none.
    int inverse(int i) const {
        if (is_primed(i)) throw Error(Errc::malformed_input, "primed letter has no inverse: " + letters_[i]);
        return inverse_[i];
    }

    /// Inverse taken after projecting primes away.
    int inverse_of_base(int i) const { return inverse_[base_[i]]; }

    /// Appends the primed copy of an undecorated letter ("x'" -> x).
    Alphabet with_prime(int base_letter) const {
        if (is_primed(base_letter))
            throw Error(Errc::determinism_clash, "cannot prime a primed letter");
        std::string name = letters_[base_letter] + "'";
        if (index_of(name) >= 0)
            throw Error(Errc::determinism_clash, "alphabet already contains " + name);
        Alphabet a = *this;
        a.add_letter(name);
        a.base_.back() = base_letter;
        return a;
    }

    bool has_primes() const {
        for (int i = 0; i < size(); ++i)
            if (is_primed(i)) return true;
        return false;
    }

    std::vector<std::pair<int, int>> involution_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < size(); ++i)
            if (!is_primed(i) && inverse_[i] > i) out.emplace_back(i, inverse_[i]);
        return out;
    }

    std::vector<std::pair<int, int>> prime_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < size(); ++i)
            if (is_primed(i)) out.emplace_back(i, base_[i]);
        return out;
    }

    /// Accepts compact ("abA", primes as "a'") or space-separated ("a b A") text.
    Word parse_word(const std::string& text) const {
        Word w;
        if (text.find(' ') != std::string::npos) {
            std::string tok;
            for (std::size_t i = 0; i <= text.size(); ++i) {
                if (i == text.size() || text[i] == ' ') {
                    if (!tok.empty()) {
                        w.push_back(require_letter(tok));
                        tok.clear();
                    }
                } else {
                    tok += text[i];
                }
            }
        } else {
            for (std::size_t i = 0; i < text.size(); ++i) {
                std::string tok(1, text[i]);
                if (i + 1 < text.size() && text[i + 1] == '\'') {
                    tok += '\'';
                    ++i;
                }
                w.push_back(require_letter(tok));
            }
        }
        return w;
    }

    std::string format_word(const Word& w) const {
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out += ' ';
            out += letters_[w[i]];
        }
        return out;
    }

    std::string format_word_compact(const Word& w) const {
        std::string out;
        for (int x : w) out += letters_[x];
        return out;
    }

    bool operator==(const Alphabet& other) const {
        return letters_ == other.letters_ && inverse_ == other.inverse_ && base_ == other.base_;
    }

private:
    void add_letter(const std::string& s) {
        if (s.empty()) throw Error(Errc::malformed_input, "empty letter name");
        if (index_.count(s)) throw Error(Errc::malformed_input, "duplicate letter: " + s);
        index_[s] = static_cast<int>(letters_.size());
        letters_.push_back(s);
        inverse_.push_back(-1);
        base_.push_back(static_cast<int>(letters_.size()) - 1);
    }

    int require_letter(const std::string& tok) const {
        int i = index_of(tok);
        if (i < 0) throw Error(Errc::malformed_input, "unknown letter: '" + tok + "'");
        return i;
    }

    void check() const {
        for (int i = 0; i < size(); ++i) {
            if (is_primed(i)) {
                if (base_[base_[i]] != base_[i])
                    throw Error(Errc::malformed_input, "primed letter maps to a primed letter");
            } else {
                if (inverse_[i] < 0)
                    throw Error(Errc::malformed_input, "letter lacks an inverse: " + letters_[i]);
                if (inverse_[i] == i)
                    throw Error(Errc::malformed_input, "involution must be fixed-point-free");
                if (inverse_[inverse_[i]] != i)
                    throw Error(Errc::malformed_input, "involution is not a pairing");
            }
        }
    }

    std::vector<std::string> letters_;
    std::vector<int> inverse_;
    std::vector<int> base_;
    std::map<std::string, int> index_;
};

}  // namespace growth

#endif  // GROWTH_ALPHABET_HPP
