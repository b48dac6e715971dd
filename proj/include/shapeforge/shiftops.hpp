#pragma once

/**
 * @file shiftops.hpp
 * @brief Shift operators on formal powers and their symmetrized words.
 *
 * An Up letter of amount m raises the exponent of one variable by m; a Down
 * letter lowers it by m, annihilating monomials whose exponent is below m.
 * A word is a product of letters that all act on the same particle; letters
 * are written left to right and applied right to left, as operator products.
 * Its symmetrization sums the word over every particle index, which maps
 * antisymmetric polynomials to antisymmetric polynomials.
 *
 * Text form: one "<coordinate letter>[<signed amount>]" per letter, for
 * example "u[-1]t[-2]" for Down_u(1) Down_t(2).
 */

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "shapeforge/multipoly.hpp"

namespace shapeforge::shiftops {

enum class Direction { Down, Up };

struct Letter {
  int coordinate = 0;
  Direction direction = Direction::Down;
  unsigned amount = 1;

  long signed_amount() const {
    return direction == Direction::Up ? static_cast<long>(amount) : -static_cast<long>(amount);
  }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter up(int coordinate, unsigned amount = 1) { return {coordinate, Direction::Up, amount}; }
inline Letter down(int coordinate, unsigned amount = 1) {
  return {coordinate, Direction::Down, amount};
}

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  long net_grade() const { return net_grade_; }
  /// Largest coordinate used plus one; 0 for the empty word.
  int span_dims() const;

  std::string to_string() const;
  static Word parse(std::string_view text);

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

 private:
  std::vector<Letter> letters_;
  long net_grade_ = 0;
};

/// A word summed over all particle indices.
class SymWord {
 public:
  SymWord() = default;
  explicit SymWord(Word word) : word_(std::move(word)) {}
  SymWord(std::initializer_list<Letter> letters) : word_(letters) {}

  const Word& word() const { return word_; }
  long net_grade() const { return word_.net_grade(); }
  std::string to_string() const { return word_.to_string(); }
  static SymWord parse(std::string_view text) { return SymWord(Word::parse(text)); }

  friend bool operator==(const SymWord&, const SymWord&) = default;
  friend auto operator<=>(const SymWord&, const SymWord&) = default;

 private:
  Word word_;
};

long word_net_grade(const Word& w);

multipoly::MPoly apply_letter_at(const Letter& letter, int particle, const multipoly::MPoly& p);
/// All letters of the word at one particle, rightmost first.
multipoly::MPoly apply_word_at(const Word& w, int particle, const multipoly::MPoly& p);
multipoly::MPoly apply_symword(const SymWord& w, const multipoly::MPoly& p);

}  // namespace shapeforge::shiftops
