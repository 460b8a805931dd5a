#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fusionwalk {

/// Element of the free monoid on two letters 'a' and 'b'. The empty word is
/// the monoid unit and serializes as "e".
class Word {
public:
    Word() = default;

    /// Builds a word from a run of 'a'/'b' characters. Throws on anything else.
    explicit Word(std::string letters) : letters_(std::move(letters)) {
        for (char c : letters_) {
            if (c != 'a' && c != 'b')
                throw std::invalid_argument("Word: letters must be 'a' or 'b'");
        }
    }

    /// Parses the external form: "e" for the empty word, otherwise a run of a/b.
    static Word parse(std::string_view token) {
        if (token == "e") return Word{};
        return Word{std::string(token)};
    }

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    char at(std::size_t i) const { return letters_.at(i); }
    char front() const { return letters_.front(); }
    char back() const { return letters_.back(); }
    const std::string& letters() const noexcept { return letters_; }

    static char swap_letter(char c) noexcept { return c == 'a' ? 'b' : 'a'; }

    /// The involution: reverse the word and swap a<->b. An anti-automorphism.
    Word involute() const {
        std::string out(letters_.rbegin(), letters_.rend());
        for (char& c : out) c = swap_letter(c);
        return Word{raw_tag{}, std::move(out)};
    }

    /// First n letters (n <= size).
    Word prefix(std::size_t n) const {
        check_len(n);
        return Word{raw_tag{}, letters_.substr(0, n)};
    }

    /// Last n letters (n <= size).
    Word suffix(std::size_t n) const {
        check_len(n);
        return Word{raw_tag{}, letters_.substr(letters_.size() - n)};
    }

    Word drop_first(std::size_t n = 1) const {
        check_len(n);
        return Word{raw_tag{}, letters_.substr(n)};
    }

    Word drop_last(std::size_t n = 1) const {
        check_len(n);
        return Word{raw_tag{}, letters_.substr(0, letters_.size() - n)};
    }

    bool starts_with(const Word& w) const {
        return letters_.size() >= w.size() &&
               letters_.compare(0, w.size(), w.letters_) == 0;
    }

    bool ends_with(const Word& w) const {
        return letters_.size() >= w.size() &&
               letters_.compare(letters_.size() - w.size(), w.size(), w.letters_) == 0;
    }

    /// Length of the longest common suffix with another word.
    std::size_t common_tail_length(const Word& other) const noexcept {
        std::size_t n = 0;
        const std::size_t m = std::min(size(), other.size());
        while (n < m && letters_[size() - 1 - n] == other.letters_[other.size() - 1 - n]) ++n;
        return n;
    }

    friend Word operator+(const Word& x, const Word& y) {
        return Word{raw_tag{}, x.letters_ + y.letters_};
    }

    Word append(char c) const {
        if (c != 'a' && c != 'b') throw std::invalid_argument("Word: bad letter");
        return Word{raw_tag{}, letters_ + c};
    }

    Word prepend(char c) const {
        if (c != 'a' && c != 'b') throw std::invalid_argument("Word: bad letter");
        return Word{raw_tag{}, std::string(1, c) + letters_};
    }

    /// External form: "e" for the unit, the letter run otherwise.
    std::string str() const { return letters_.empty() ? std::string("e") : letters_; }

    bool operator==(const Word&) const = default;

    /// Length-lexicographic order; gives deterministic, readable listings.
    std::strong_ordering operator<=>(const Word& other) const noexcept {
        if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
        return letters_.compare(other.letters_) <=> 0;
    }

private:
    struct raw_tag {};
    Word(raw_tag, std::string letters) : letters_(std::move(letters)) {}
    void check_len(std::size_t n) const {
        if (n > letters_.size()) throw std::out_of_range("Word: length exceeded");
    }

    std::string letters_;
};

inline Word involute(const Word& w) { return w.involute(); }

}  // namespace fusionwalk
