#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pathcalc {

// One letter of a group word: a generator taken with exponent +1 or -1.
struct Letter {
  std::string generator;
  int sign = +1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

// A word in a free group over named generators; the empty word is the
// identity. Words are plain sequences: all structure lives in the functions
// below.
using GroupWord = std::vector<Letter>;

// Raised when a word mentions a generator the relevant presentation or
// surface does not declare.
class UnknownGeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by solvers that require a specific presentation shape.
class UnsupportedPresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses whitespace-separated letters: "a" is a generator, "a^-1" its
// inverse ("a'" is accepted as shorthand). The single token "1" denotes the
// empty word, matching format_word. Throws ParseError on malformed tokens.
GroupWord parse_word(std::string_view text);

// Canonical rendering: letters joined by single spaces, inverses spelled
// "a^-1"; the empty word renders as "1". parse_word is a left inverse.
std::string format_word(const GroupWord& word);

// Group-theoretic inverse: reversed word with flipped signs.
GroupWord inverse(const GroupWord& word);

// Concatenation u·v (no reduction applied).
GroupWord concat(const GroupWord& u, const GroupWord& v);

// Cancels adjacent g·g^-1 and g^-1·g pairs until none remain. The result is
// independent of cancellation order.
GroupWord free_reduce(const GroupWord& word);

// A finitely presented group: ordered generators, relator words, and an
// optional basepoint tag. The tag is display-only: operator== compares
// generators and relators and ignores it.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<GroupWord> relators;
  std::string basepoint;

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.generators == b.generators && a.relators == b.relators;
  }
};

// Parses "gens: a b ; rels: w1 , w2" (rels may be empty). Every relator may
// mention only declared generators; violations raise UnknownGeneratorError.
Presentation parse_presentation(std::string_view text);

// Serializes in the format accepted by parse_presentation.
std::string format_presentation(const Presentation& presentation);

// Invariants of the abelianized group in canonical form: free rank plus
// torsion orders, each at least 2 and each dividing the next.
struct AbelianInvariants {
  int free_rank = 0;
  std::vector<long long> torsion;

  friend bool operator==(const AbelianInvariants&,
                         const AbelianInvariants&) = default;
};

// Smith normal form of the relator exponent matrix over exact integers.
AbelianInvariants abelianize(const Presentation& presentation);

// Element of the Klein-bottle group in coordinates (m, n) standing for
// a^m b^n, with the twisted product (m1,n1)·(m2,n2) =
// (m1+m2, (-1)^m2 · n1 + n2). The coordinates are unique, so equality of
// elements is equality of coordinate pairs.
struct KleinElement {
  long long m = 0;
  long long n = 0;

  friend bool operator==(const KleinElement&, const KleinElement&) = default;
};

// The twisted product above.
KleinElement klein_multiply(const KleinElement& x, const KleinElement& y);

// Evaluates a word over {a, b} left to right in the coordinate model, with
// a = (1,0) and b = (0,1). The word is trivial iff the result is (0,0).
KleinElement klein_oracle_eval(const GroupWord& word);

// Normal form a^m b^n of a word over {a, b} in the Klein-bottle group,
// computed by the exchange rewrites b a -> a b^-1, b a^-1 -> a^-1 b^-1,
// b^-1 a -> a b, b^-1 a^-1 -> a^-1 b (each derived from the relator
// b a b a^-1) plus free reduction. Agrees with klein_oracle_eval everywhere.
KleinElement klein_normal_form(const GroupWord& word);

// Element of the torus group in coordinates (n, m) standing for b^n a^m.
struct TorusElement {
  long long n = 0;
  long long m = 0;

  friend bool operator==(const TorusElement&, const TorusElement&) = default;
};

// Normal form b^n a^m of a word over {a, b} in the torus group, computed by
// commuting every a past the b's on its left and freely reducing. Agrees
// with the signed exponent sums of the word.
TorusElement torus_normal_form(const GroupWord& word);

// Dehn's algorithm for the one-relator presentation of an orientable
// surface of genus >= 2: repeatedly reduce freely and cyclically, and
// replace any subword covering more than half of a cyclic rotation of the
// relator (or of its inverse) by the inverse of the rotation's remainder.
// The result is empty iff the word represents the identity, and has the
// same abelianization image as the input. Throws
// UnsupportedPresentationError unless the presentation is a single
// genus-g >= 2 relator over its generator list, and UnknownGeneratorError
// for words outside those generators.
GroupWord dehn_reduce(const GroupWord& word, const Presentation& presentation);

// Presentation of the fundamental group of the union of two open sets from
// presentations of the pieces and of their intersection: generators are the
// disjoint union (the second presentation's names are suffixed with "_v" on
// collision), relators are both relator lists plus one amalgamation relator
// u·v^-1 per pair, where the pair gives the images of one intersection
// generator in each piece. Throws UnknownGeneratorError when an amalgam
// word leaves its side's generators.
Presentation vankampen_pushout(
    const Presentation& p_u, const Presentation& p_v,
    const std::vector<std::pair<GroupWord, GroupWord>>& amalgam);

// Surface selector for the solvers and presentations below.
class Surface {
 public:
  static Surface circle();
  static Surface torus();
  static Surface klein();
  // Orientable surface of genus n >= 1; throws std::invalid_argument below 1.
  static Surface genus(int n);

  // Parses "circle", "torus", "klein", "genus-N".
  static Surface parse(std::string_view text);
  std::string str() const;

  bool is_circle() const { return kind_ == Kind::Circle; }
  bool is_torus() const { return kind_ == Kind::Torus; }
  bool is_klein() const { return kind_ == Kind::Klein; }
  bool is_genus() const { return kind_ == Kind::Genus; }
  int genus_n() const;

  friend bool operator==(const Surface&, const Surface&) = default;

 private:
  enum class Kind { Circle, Torus, Klein, Genus };
  Surface(Kind kind, int n) : kind_(kind), n_(n) {}
  Kind kind_;
  int n_;
};

// The standard presentations: circle -> <xi | >, torus -> <a,b | b a b^-1 a^-1>,
// klein -> <a,b | b a b a^-1>, genus(n) -> <a1,b1,...,an,bn | [a1,b1]...[an,bn]>
// with the commutator convention [a,b] = b a b^-1 a^-1.
Presentation surface_presentation(const Surface& surface);

// One-relator presentation of the space obtained by gluing a polygon along
// the given nonempty boundary word: generators are the distinct names of the
// word in sorted order, the single relator is the word itself.
Presentation polygon_presentation(const GroupWord& boundary);

// Canonical representative of the word's class in the surface group: the
// reduced power of xi for the circle, the normal forms b^n a^m / a^m b^n for
// torus and Klein, and the Dehn-reduced word for genus >= 2 (genus 1 uses
// the torus solver on its own generator names). The result is empty exactly
// for identity words.
GroupWord surface_normal_form(const GroupWord& word, const Surface& surface);

// Whether u and v represent the same element of the surface group, decided
// by the surface's solver on u·v^-1.
bool words_equal(const GroupWord& u, const GroupWord& v,
                 const Surface& surface);

}  // namespace pathcalc
