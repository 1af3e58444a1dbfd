#include "crtvss/sim/term.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "crtvss/crypto/sha1.hpp"

namespace crtvss::sim {

bool Term::operator==(const Term& other) const {
  return kind == other.kind && text == other.text && children == other.children;
}

bool Term::operator<(const Term& other) const {
  return Encode(*this) < Encode(other);
}

const char* TermKindName(TermKind kind) {
  switch (kind) {
    case TermKind::kId: return "id";
    case TermKind::kLabel: return "label";
    case TermKind::kNonce: return "nonce";
    case TermKind::kSessionKey: return "key";
    case TermKind::kSignKey: return "signkey";
    case TermKind::kDhPublic: return "dhpub";
    case TermKind::kDhExponent: return "dhexp";
    case TermKind::kDigest: return "digest";
    case TermKind::kInteger: return "int";
    case TermKind::kPoint: return "point";
    case TermKind::kPair: return "pair";
    case TermKind::kEnc: return "enc";
    case TermKind::kSig: return "sig";
    case TermKind::kHash: return "hash";
  }
  return "?";
}

std::string Encode(const Term& term) {
  std::string out = TermKindName(term.kind);
  out += '{';
  // Escape the delimiters so the encoding stays injective.
  for (char c : term.text) {
    if (c == '{' || c == '}' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  for (const Term& child : term.children) {
    out += Encode(child);
  }
  out += '}';
  return out;
}

namespace {

Term Atom(TermKind kind, std::string text) {
  Term term;
  term.kind = kind;
  term.text = std::move(text);
  return term;
}

}  // namespace

Term MakeId(size_t node) { return Atom(TermKind::kId, std::to_string(node)); }
Term MakeLabel(const std::string& name) { return Atom(TermKind::kLabel, name); }
Term MakeNonce(const std::string& hex_value) { return Atom(TermKind::kNonce, hex_value); }
Term MakeSessionKey(const std::string& hex_value) {
  return Atom(TermKind::kSessionKey, hex_value);
}
Term MakeSignKey(const std::string& name) { return Atom(TermKind::kSignKey, name); }
Term MakeDhPublic(const std::string& hex_value) { return Atom(TermKind::kDhPublic, hex_value); }
Term MakeDhExponent(const std::string& hex_value) {
  return Atom(TermKind::kDhExponent, hex_value);
}
Term MakeDigest(const std::string& hex_value) { return Atom(TermKind::kDigest, hex_value); }
Term MakeInteger(const std::string& hex_value) { return Atom(TermKind::kInteger, hex_value); }
Term MakePoint(const std::string& encoded_point) {
  return Atom(TermKind::kPoint, encoded_point);
}

Term MakePair(Term first, Term second) {
  Term term;
  term.kind = TermKind::kPair;
  term.children.push_back(std::move(first));
  term.children.push_back(std::move(second));
  return term;
}

Term MakeTuple(std::vector<Term> elements) {
  if (elements.empty()) {
    throw std::invalid_argument("tuple needs at least one element");
  }
  Term out = std::move(elements.back());
  for (size_t i = elements.size() - 1; i-- > 0;) {
    out = MakePair(std::move(elements[i]), std::move(out));
  }
  return out;
}

std::vector<Term> TupleElements(const Term& term) {
  std::vector<Term> out;
  const Term* cursor = &term;
  while (cursor->kind == TermKind::kPair) {
    out.push_back(cursor->children[0]);
    cursor = &cursor->children[1];
  }
  out.push_back(*cursor);
  return out;
}

std::string KeyFingerprint(const Term& key) {
  return DigestToHex(Sha1::Hash("fp|" + Encode(key))).substr(0, 16);
}

Term MakeEnc(Term body, const Term& key) {
  Term term;
  term.kind = TermKind::kEnc;
  term.text = KeyFingerprint(key);
  term.children.push_back(std::move(body));
  return term;
}

Term MakeSig(Term body, const std::string& sig_text) {
  Term term;
  term.kind = TermKind::kSig;
  term.text = sig_text;
  term.children.push_back(std::move(body));
  return term;
}

Term MakeHash(Term body) {
  Term term;
  term.kind = TermKind::kHash;
  term.children.push_back(std::move(body));
  return term;
}

namespace {

void CollectSubterms(const Term& term, std::set<Term>& out) {
  out.insert(term);
  for (const Term& child : term.children) {
    CollectSubterms(child, out);
  }
}

}  // namespace

std::vector<Term> Subterms(const Term& term) {
  std::set<Term> collected;
  CollectSubterms(term, collected);
  return std::vector<Term>(collected.begin(), collected.end());
}

size_t TermDepth(const Term& term) {
  size_t deepest = 0;
  for (const Term& child : term.children) {
    deepest = std::max(deepest, TermDepth(child));
  }
  return deepest + 1;
}

}  // namespace crtvss::sim
