#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <string_view>

#include "pleat/moebius.hpp"

namespace pleat {

// Freely reduced word. Lowercase letters are generators, uppercase their inverses.
class Word {
 public:
  Word() = default;
  // Throws InvalidArgument on non-alphabetic input; "1" is the empty word.
  explicit Word(std::string_view letters);

  const std::string& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  std::string str() const { return letters_.empty() ? "1" : letters_; }

  Word inverse() const;
  // Applies a letter substitution to lowercase letters; inverses follow.
  Word substitute(const std::function<Word(char)>& image) const;

  friend Word operator*(const Word& l, const Word& r);
  bool operator==(const Word& other) const = default;

 private:
  std::string letters_;
};

char invert_letter(char c);

// Uniform reduced word of the given length over the lowercase `alphabet`.
Word random_word(std::mt19937_64& rng, std::string_view alphabet, std::size_t length);

// Product of generator images; uppercase letters use the inverse.
MoebiusMap evaluate_word(const Word& w, const std::function<MoebiusMap(char)>& generator);

}  // namespace pleat
