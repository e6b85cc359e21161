#include "pleat/word.hpp"

#include <cctype>

#include "pleat/error.hpp"

namespace pleat {

namespace {

void push_reduced(std::string& out, char c) {
  if (!out.empty() && out.back() == invert_letter(c)) {
    out.pop_back();
  } else {
    out.push_back(c);
  }
}

}  // namespace

char invert_letter(char c) {
  return std::islower(static_cast<unsigned char>(c))
             ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
             : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

Word::Word(std::string_view letters) {
  if (letters == "1") return;
  for (char c : letters) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw Error(ErrorKind::InvalidArgument, "bad letter in word: " + std::string(letters));
    }
    push_reduced(letters_, c);
  }
}

Word Word::inverse() const {
  Word w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(invert_letter(*it));
  return w;
}

Word Word::substitute(const std::function<Word(char)>& image) const {
  Word out;
  for (char c : letters_) {
    bool lower = std::islower(static_cast<unsigned char>(c));
    Word piece = lower ? image(c) : image(invert_letter(c)).inverse();
    out = out * piece;
  }
  return out;
}

Word operator*(const Word& l, const Word& r) {
  Word w = l;
  for (char c : r.letters_) push_reduced(w.letters_, c);
  return w;
}

Word random_word(std::mt19937_64& rng, std::string_view alphabet, std::size_t length) {
  std::string letters;
  for (char c : alphabet) {
    letters.push_back(c);
    letters.push_back(invert_letter(c));
  }
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::string out;
  while (out.size() < length) {
    char c = letters[pick(rng)];
    if (!out.empty() && out.back() == invert_letter(c)) continue;
    out.push_back(c);
  }
  return Word(out);
}

MoebiusMap evaluate_word(const Word& w, const std::function<MoebiusMap(char)>& generator) {
  MoebiusMap out;
  for (char c : w.letters()) {
    bool lower = std::islower(static_cast<unsigned char>(c));
    MoebiusMap g = lower ? generator(c) : generator(invert_letter(c)).inverse();
    out = out * g;
  }
  return out;
}

}  // namespace pleat
