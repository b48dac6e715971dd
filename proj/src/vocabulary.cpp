#include <algorithm>
#include <cstdlib>

#include "shapeforge/enumerate.hpp"
#include "shapeforge/error.hpp"

namespace shapeforge::enumerate {

using shiftops::Letter;
using shiftops::Word;

namespace {

// Letters of one canonical segment, written order (applied right to left).
std::vector<std::vector<Letter>> segments(int coordinate, unsigned max_amount) {
  std::vector<std::vector<Letter>> out;
  out.push_back({});
  for (unsigned b = 1; b <= max_amount; ++b) out.push_back({shiftops::down(coordinate, b)});
  for (unsigned a = 1; a <= max_amount; ++a) out.push_back({shiftops::up(coordinate, a)});
  for (unsigned a = 1; a <= max_amount; ++a)
    for (unsigned b = 1; b <= max_amount; ++b)
      out.push_back({shiftops::up(coordinate, a), shiftops::down(coordinate, b)});
  return out;
}

}  // namespace

Vocabulary build_vocabulary(int dims, const VocabularyConfig& config) {
  if (dims < 1) throw Error(Errc::invalid_argument, "vocabulary needs d >= 1");
  if (config.max_letters < 1 || config.max_amount < 1 || config.max_drop < 1)
    throw Error(Errc::invalid_argument, "vocabulary bounds must be positive");
  std::vector<std::vector<std::vector<Letter>>> per_coord;
  for (int c = 0; c < dims; ++c) per_coord.push_back(segments(c, config.max_amount));

  std::vector<Word> words;
  std::vector<Letter> letters;
  // coordinates are written highest first, as in v u t
  auto rec = [&](auto&& self, int c) -> void {
    if (c < 0) {
      if (letters.empty()) return;
      Word w(letters);
      // up-down pairs only stand alone, as in T T-bar^2
      const bool has_up = std::any_of(letters.begin(), letters.end(), [](const Letter& l) {
        return l.direction == shiftops::Direction::Up;
      });
      if (has_up && std::any_of(letters.begin(), letters.end(), [&](const Letter& l) {
            return l.coordinate != letters.front().coordinate;
          }))
        return;
      if (w.net_grade() <= -1 && w.net_grade() >= -config.max_drop) words.push_back(std::move(w));
      return;
    }
    for (const auto& seg : per_coord[c]) {
      if (static_cast<int>(letters.size() + seg.size()) > config.max_letters) continue;
      letters.insert(letters.end(), seg.begin(), seg.end());
      self(self, c - 1);
      letters.resize(letters.size() - seg.size());
    }
  };
  rec(rec, dims - 1);

  std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    const long na = std::labs(a.net_grade());
    const long nb = std::labs(b.net_grade());
    if (na != nb) return na < nb;
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
  });
  Vocabulary v;
  v.dims = dims;
  v.config = config;
  v.words.reserve(words.size());
  for (auto& w : words) v.words.emplace_back(std::move(w));
  return v;
}

bool is_unit_lowering(const SymWord& w) {
  const auto& letters = w.word().letters();
  return letters.size() == 1 && letters[0].direction == shiftops::Direction::Down &&
         letters[0].amount == 1;
}

}  // namespace shapeforge::enumerate
