#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace crtvss::sim {

// Symbolic message algebra for the network model. Atoms carry their
// payload in `text`; composites carry children. Encryption stores only a
// fingerprint of its key, never the key term itself, so possessing a
// ciphertext term reveals nothing about the key. Signature terms carry
// scheme, signer and tag in `text` and the signed body as a child
// (signatures here are message-recovering: anyone can read the body,
// nobody without the TPM-resident key can mint a valid tag).
enum class TermKind {
  kId,
  kLabel,
  kNonce,
  kSessionKey,
  kSignKey,
  kDhPublic,
  kDhExponent,
  kDigest,
  kInteger,
  kPoint,
  kPair,
  kEnc,
  kSig,
  kHash,
};

struct Term {
  TermKind kind = TermKind::kLabel;
  std::string text;
  std::vector<Term> children;

  bool operator==(const Term& other) const;
  bool operator<(const Term& other) const;  // lexicographic on canonical encoding
};

const char* TermKindName(TermKind kind);

// Canonical injective encoding; also the transcript representation.
std::string Encode(const Term& term);

Term MakeId(size_t node);
Term MakeLabel(const std::string& name);
Term MakeNonce(const std::string& hex_value);
Term MakeSessionKey(const std::string& hex_value);
Term MakeSignKey(const std::string& name);
Term MakeDhPublic(const std::string& hex_value);
Term MakeDhExponent(const std::string& hex_value);
Term MakeDigest(const std::string& hex_value);
Term MakeInteger(const std::string& hex_value);
Term MakePoint(const std::string& encoded_point);

Term MakePair(Term first, Term second);
// Right-nested pairs; requires at least one element.
Term MakeTuple(std::vector<Term> elements);
// Flattens right-nested pairs back into a vector.
std::vector<Term> TupleElements(const Term& term);

// Keyed constructions. The key fingerprint commits to the key value
// without embedding it.
std::string KeyFingerprint(const Term& key);
Term MakeEnc(Term body, const Term& key);
Term MakeSig(Term body, const std::string& sig_text);
Term MakeHash(Term body);

// Every subterm including the term itself (deduplicated, sorted).
std::vector<Term> Subterms(const Term& term);

size_t TermDepth(const Term& term);

}  // namespace crtvss::sim
