#include "shapeforge/shiftops.hpp"

#include <charconv>
#include <limits>

#include "shapeforge/error.hpp"

namespace shapeforge::shiftops {

using multipoly::Exponent;
using multipoly::MPoly;

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.amount < 1) throw Error(Errc::invalid_argument, "shift amount must be at least 1");
    if (l.coordinate < 0) throw Error(Errc::invalid_argument, "negative shift coordinate");
    net_grade_ += l.signed_amount();
  }
}

int Word::span_dims() const {
  int d = 0;
  for (const auto& l : letters_) d = std::max(d, l.coordinate + 1);
  return d;
}

std::string Word::to_string() const {
  std::string out;
  for (const auto& l : letters_) {
    out += multipoly::coordinate_letter(l.coordinate);
    out += '[';
    out += std::to_string(l.signed_amount());
    out += ']';
  }
  return out;
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    const int c = multipoly::coordinate_from_letter(text[i]);
    if (c < 0 || i + 1 >= text.size() || text[i + 1] != '[')
      throw Error(Errc::parse, "bad word letter in \"" + std::string(text) + "\"");
    const std::size_t close = text.find(']', i + 2);
    if (close == std::string_view::npos)
      throw Error(Errc::parse, "unterminated amount in \"" + std::string(text) + "\"");
    std::string_view num = text.substr(i + 2, close - i - 2);
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    long value = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || ptr != num.data() + num.size() || value == 0)
      throw Error(Errc::parse, "bad shift amount in \"" + std::string(text) + "\"");
    const unsigned long mag = static_cast<unsigned long>(value < 0 ? -value : value);
    if (mag > std::numeric_limits<unsigned>::max())
      throw Error(Errc::parse, "shift amount too large");
    letters.push_back({c, value > 0 ? Direction::Up : Direction::Down, static_cast<unsigned>(mag)});
    i = close + 1;
  }
  return Word(std::move(letters));
}

long word_net_grade(const Word& w) { return w.net_grade(); }

MPoly apply_letter_at(const Letter& letter, int particle, const MPoly& p) {
  return apply_word_at(Word({letter}), particle, p);
}

MPoly apply_word_at(const Word& w, int particle, const MPoly& p) {
  const auto layout = p.layout();
  if (particle < 0 || particle >= layout.particles)
    throw Error(Errc::out_of_range, "particle index outside [0, N)");
  if (w.span_dims() > layout.dims)
    throw Error(Errc::dimension_mismatch, "word uses a coordinate beyond d");
  const std::size_t width = layout.variables();
  std::vector<Exponent> exps;
  std::vector<Integer> coefs;
  exps.reserve(p.size() * width);
  coefs.reserve(p.size());
  const auto& letters = w.letters();
  // Each letter shifts one fixed slot of every surviving term by the same
  // amount, so lexicographic order is preserved and no re-sorting is needed.
  for (std::size_t t = 0; t < p.size(); ++t) {
    auto src = p.exponents(t);
    const std::size_t base = exps.size();
    exps.insert(exps.end(), src.begin(), src.end());
    bool alive = true;
    for (auto it = letters.rbegin(); it != letters.rend() && alive; ++it) {
      Exponent& e = exps[base + layout.index(it->coordinate, particle)];
      if (it->direction == Direction::Up) {
        if (e > std::numeric_limits<Exponent>::max() - it->amount)
          throw Error(Errc::out_of_range, "exponent overflow in up-shift");
        e += it->amount;
      } else if (e >= it->amount) {
        e -= it->amount;
      } else {
        alive = false;
      }
    }
    if (alive)
      coefs.push_back(p.coefficient(t));
    else
      exps.resize(base);
  }
  return MPoly::from_sorted(layout, std::move(exps), std::move(coefs));
}

MPoly apply_symword(const SymWord& w, const MPoly& p) {
  const auto layout = p.layout();
  std::vector<MPoly> parts;
  parts.reserve(layout.particles);
  for (int k = 0; k < layout.particles; ++k) parts.push_back(apply_word_at(w.word(), k, p));
  return multipoly::sum(std::move(parts), layout);
}

}  // namespace shapeforge::shiftops
