#include "crtvss/attest/auth.hpp"

#include <sstream>

#include "crtvss/common/error.hpp"
#include "crtvss/common/hex.hpp"
#include "crtvss/math/modmath.hpp"

namespace crtvss {
namespace {

using sim::Envelope;
using sim::MakeDhPublic;
using sim::MakeDigest;
using sim::MakeEnc;
using sim::MakeHash;
using sim::MakeId;
using sim::MakeLabel;
using sim::MakeNonce;
using sim::MakePair;
using sim::MakeSessionKey;
using sim::MakeSig;
using sim::MakeTuple;
using sim::Term;
using sim::TermKind;

constexpr char kInitLabel[] = "INIT";
constexpr char kKeyReuseLabel[] = "key-reuse";

std::vector<std::string> SplitSlash(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, '/')) {
    out.push_back(piece);
  }
  return out;
}

Term DsToTerm(const DaaSignature& ds) {
  return MakeSig(MakeDigest(ds.im_hex),
                 "daa/" + std::to_string(ds.signer) + "/" + ds.tag_hex);
}

Term PsToTerm(const PbaSignature& ps) {
  return MakeSig(MakeDigest(ps.im_hex), "pba/" + std::to_string(ps.signer) + "/" +
                                            ps.config_digest_hex + "/" + ps.tag_hex);
}

Term AikToTerm(const AikSignature& sig, Term body) {
  return MakeSig(std::move(body), "aik/" + std::to_string(sig.signer) + "/" + sig.tag_hex);
}

std::optional<DaaSignature> DsFromTerm(const Term& term) {
  if (term.kind != TermKind::kSig || term.children.size() != 1 ||
      term.children[0].kind != TermKind::kDigest) {
    return std::nullopt;
  }
  const std::vector<std::string> parts = SplitSlash(term.text);
  if (parts.size() != 3 || parts[0] != "daa" || parts[1].empty() ||
      parts[1].find_first_not_of("0123456789") != std::string::npos) {
    return std::nullopt;
  }
  return DaaSignature{std::stoull(parts[1]), term.children[0].text, parts[2]};
}

std::optional<PbaSignature> PsFromTerm(const Term& term) {
  if (term.kind != TermKind::kSig || term.children.size() != 1 ||
      term.children[0].kind != TermKind::kDigest) {
    return std::nullopt;
  }
  const std::vector<std::string> parts = SplitSlash(term.text);
  if (parts.size() != 4 || parts[0] != "pba" || parts[1].empty() ||
      parts[1].find_first_not_of("0123456789") != std::string::npos) {
    return std::nullopt;
  }
  return PbaSignature{std::stoull(parts[1]), term.children[0].text, parts[2], parts[3]};
}

std::optional<AikSignature> AikFromTerm(const Term& term) {
  if (term.kind != TermKind::kSig || term.children.size() != 1) {
    return std::nullopt;
  }
  const std::vector<std::string> parts = SplitSlash(term.text);
  if (parts.size() != 3 || parts[0] != "aik" || parts[1].empty() ||
      parts[1].find_first_not_of("0123456789") != std::string::npos) {
    return std::nullopt;
  }
  return AikSignature{std::stoull(parts[1]), parts[2]};
}

bool IsId(const Term& term, sim::NodeId id) {
  return term.kind == TermKind::kId && term.text == std::to_string(id);
}

mpz_class FreshNonce(SeededRng& rng) { return mpz_class(rng.NextU64()); }

std::optional<sim::NodeId> ParseId(const Term& term) {
  if (term.kind != TermKind::kId || term.text.empty()) {
    return std::nullopt;
  }
  for (char c : term.text) {
    if (c < '0' || c > '9') {
      return std::nullopt;
    }
  }
  return std::stoull(term.text);
}

Term AssuranceTerm(sim::NodeId initiator, const std::optional<Term>& kinfo, const Term& im,
                   const Term& ds, const Term& ps) {
  std::vector<Term> parts = {MakeId(initiator)};
  if (kinfo.has_value()) {
    parts.push_back(*kinfo);
  }
  parts.push_back(im);
  parts.push_back(ds);
  parts.push_back(ps);
  return MakeHash(MakeTuple(std::move(parts)));
}

}  // namespace

const DhGroup& DefaultDhGroup() {
  static const DhGroup kGroup = [] {
    DhGroup group;
    // 64-bit safe prime: p = 2q + 1 with q prime; 4 = 2^2 generates the
    // order-q subgroup.
    group.p = mpz_class("fffffffffffffa43", 16);
    group.g = 4;
    group.subgroup_order = (group.p - 1) / 2;
    return group;
  }();
  return kGroup;
}

const char* AuthStateName(AuthState state) {
  switch (state) {
    case AuthState::kIdle: return "IDLE";
    case AuthState::kInitSent: return "INIT_SENT";
    case AuthState::kChallenged: return "CHALLENGED";
    case AuthState::kAttested: return "ATTESTED";
    case AuthState::kKeyed: return "KEYED";
    case AuthState::kDone: return "DONE";
    case AuthState::kFailed: return "FAILED";
  }
  return "?";
}

AuthSession* FindSession(AuthNode& node, sim::NodeId peer, bool is_initiator) {
  const auto it = node.sessions.find({peer, is_initiator});
  return it == node.sessions.end() ? nullptr : &it->second;
}

AttestationBundle BuildAttestationBundle(const AuthNode& node, const mpz_class& n1,
                                         const std::optional<mpz_class>& dh_public) {
  AttestationBundle bundle;
  bundle.im_hex = ComputeIm(node.id, MpzToHex(n1), node.tpm);
  bundle.ds = DaaSign(node.tpm, node.id, bundle.im_hex);
  bundle.ps = PbaSign(node.tpm, node.id, bundle.im_hex, node.config_set);
  bundle.dh_public = dh_public;
  return bundle;
}

bool VerifyAttestationBundle(const AttestationBundle& bundle, sim::NodeId claimed_sender,
                             const mpz_class& n1, const std::vector<std::string>& config_set,
                             const Authority& authority) {
  if (bundle.ds.signer != claimed_sender || bundle.ps.signer != claimed_sender) {
    return false;
  }
  if (bundle.im_hex != authority.QuoteIm(claimed_sender, MpzToHex(n1))) {
    return false;
  }
  return authority.DaaVerify(bundle.ds, bundle.im_hex) &&
         authority.PbaVerify(bundle.ps, bundle.im_hex, config_set);
}

sim::Envelope AuthStart(AuthNode& node, sim::NodeId peer, SeededRng& rng) {
  (void)rng;
  AuthSession session;
  session.is_initiator = true;
  session.self = node.id;
  session.peer = peer;
  session.state = AuthState::kInitSent;
  node.sessions[{peer, true}] = session;

  Envelope out;
  out.from = node.id;
  out.to = peer;
  out.payload = MakeTuple({MakeId(node.id), MakeId(peer), MakeLabel(kInitLabel)});
  return out;
}

namespace {

std::vector<Envelope> HandleInit(AuthNode& node, const std::vector<Term>& elems,
                                 SeededRng& rng) {
  const sim::NodeId claimed = *ParseId(elems[0]);
  // Unknown neighbor: drop the request without any reply.
  if (!node.lists.neighbors.contains(claimed)) {
    return {};
  }
  AuthSession session;
  session.is_initiator = false;
  session.self = node.id;
  session.peer = claimed;
  session.state = AuthState::kChallenged;
  session.n1 = FreshNonce(rng);
  node.sessions[{claimed, false}] = session;

  Envelope reply;
  reply.from = node.id;
  reply.to = claimed;
  reply.payload =
      MakeTuple({MakeId(node.id), MakeId(claimed), MakeNonce(MpzToHex(session.n1))});
  return {reply};
}

std::vector<Envelope> HandleChallenge(AuthNode& node, AuthSession& session,
                                      const std::vector<Term>& elems, const DhGroup& group,
                                      SeededRng& rng) {
  session.n1 = MpzFromHex(elems[2].text);

  std::optional<mpz_class> dh_public;
  if (!node.lists.keys.contains(session.peer)) {
    session.dh_exponent = rng.UniformRange(2, group.subgroup_order - 1);
    dh_public = PowMod(group.g, session.dh_exponent, group.p);
  }

  AttestationBundle bundle;
  try {
    bundle = BuildAttestationBundle(node, session.n1, dh_public);
  } catch (const Error&) {
    session.state = AuthState::kFailed;
    return {};
  }

  std::optional<Term> kinfo;
  if (bundle.dh_public.has_value()) {
    kinfo = MakeDhPublic(MpzToHex(*bundle.dh_public));
  }
  const Term im = MakeDigest(bundle.im_hex);
  const Term ds_term = DsToTerm(bundle.ds);
  const Term ps_term = PsToTerm(bundle.ps);
  const Term assurance = AssuranceTerm(node.id, kinfo, im, ds_term, ps_term);

  std::vector<Term> parts = {MakeId(node.id), MakeId(session.peer), im,
                             ds_term,         ps_term,              assurance};
  if (kinfo.has_value()) {
    parts.push_back(*kinfo);
  }
  session.state = AuthState::kAttested;

  Envelope reply;
  reply.from = node.id;
  reply.to = session.peer;
  reply.payload = MakeTuple(std::move(parts));
  return {reply};
}

std::vector<Envelope> HandleAttestation(AuthNode& node, AuthSession& session,
                                        const std::vector<Term>& elems,
                                        const Authority& authority, const DhGroup& group,
                                        SeededRng& rng) {
  const Term& im = elems[2];
  const Term& ds_term = elems[3];
  const Term& ps_term = elems[4];
  const Term& assurance = elems[5];
  std::optional<Term> kinfo;
  if (elems.size() == 7) {
    if (elems[6].kind != TermKind::kDhPublic) {
      session.state = AuthState::kFailed;
      return {};
    }
    kinfo = elems[6];
  }

  // No K_INFO is only legitimate when a session key already exists.
  if (!kinfo.has_value() && !node.lists.keys.contains(session.peer)) {
    session.state = AuthState::kFailed;
    return {};
  }

  // Integrity digest first; a mismatch drops the message silently.
  if (!(AssuranceTerm(session.peer, kinfo, im, ds_term, ps_term) == assurance)) {
    session.state = AuthState::kFailed;
    return {};
  }

  const auto ds = DsFromTerm(ds_term);
  const auto ps = PsFromTerm(ps_term);
  bool attested = ds.has_value() && ps.has_value() && im.text == ds->im_hex;
  if (attested) {
    AttestationBundle bundle{im.text, *ds, *ps, std::nullopt};
    if (kinfo.has_value()) {
      bundle.dh_public = MpzFromHex(kinfo->text);
    }
    attested = VerifyAttestationBundle(bundle, session.peer, session.n1, node.config_set,
                                       authority);
  }
  if (!attested) {
    node.lists.trust[session.peer] = -1;
    session.state = AuthState::kFailed;
    return {};
  }
  node.lists.trust[session.peer] = 1;

  Term aik_body = MakeLabel(kKeyReuseLabel);
  if (kinfo.has_value()) {
    session.dh_public_peer = MpzFromHex(kinfo->text);
    session.dh_exponent = rng.UniformRange(2, group.subgroup_order - 1);
    session.session_key = PowMod(session.dh_public_peer, session.dh_exponent, group.p);
    aik_body = MakeDhPublic(MpzToHex(PowMod(group.g, session.dh_exponent, group.p)));
  } else {
    session.session_key = node.lists.keys.at(session.peer);
  }
  session.have_key = true;
  node.lists.keys[session.peer] = session.session_key;

  session.n2 = FreshNonce(rng);
  const Term signed_body = MakePair(aik_body, MakeId(node.id));
  const AikSignature aik = AikSign(node.tpm, node.id, sim::Encode(signed_body));
  const Term key_term = MakeSessionKey(MpzToHex(session.session_key));
  const Term challenge =
      MakeEnc(MakePair(MakeId(node.id), MakeNonce(MpzToHex(session.n2))), key_term);

  session.state = AuthState::kKeyed;
  Envelope reply;
  reply.from = node.id;
  reply.to = session.peer;
  reply.payload = MakeTuple(
      {MakeId(node.id), MakeId(session.peer), AikToTerm(aik, signed_body), challenge});
  return {reply};
}

std::vector<Envelope> HandleKeyDelivery(AuthNode& node, AuthSession& session,
                                        const std::vector<Term>& elems,
                                        const Authority& authority, const DhGroup& group) {
  const Term& sig_term = elems[2];
  const Term& challenge = elems[3];

  const auto aik = AikFromTerm(sig_term);
  if (!aik.has_value() || aik->signer != session.peer ||
      !authority.AikVerify(*aik, sim::Encode(sig_term.children[0]))) {
    session.state = AuthState::kFailed;
    return {};
  }
  const Term& signed_body = sig_term.children[0];
  if (signed_body.kind != TermKind::kPair || signed_body.children.size() != 2 ||
      !IsId(signed_body.children[1], session.peer)) {
    session.state = AuthState::kFailed;
    return {};
  }

  const Term& key_part = signed_body.children[0];
  mpz_class derived_key;
  mpz_class peer_public = 0;
  if (key_part.kind == TermKind::kDhPublic) {
    peer_public = MpzFromHex(key_part.text);
    derived_key = PowMod(peer_public, session.dh_exponent, group.p);
  } else if (key_part.kind == TermKind::kLabel && key_part.text == kKeyReuseLabel &&
             node.lists.keys.contains(session.peer)) {
    derived_key = node.lists.keys.at(session.peer);
  } else {
    session.state = AuthState::kFailed;
    return {};
  }

  const Term key_term = MakeSessionKey(MpzToHex(derived_key));
  if (challenge.kind != TermKind::kEnc || challenge.text != sim::KeyFingerprint(key_term)) {
    session.state = AuthState::kFailed;
    return {};
  }
  const Term& inner = challenge.children[0];
  if (inner.kind != TermKind::kPair || !IsId(inner.children[0], session.peer) ||
      inner.children[1].kind != TermKind::kNonce) {
    session.state = AuthState::kFailed;
    return {};
  }

  // Everything checked: commit the key and the trust mark.
  session.dh_public_peer = peer_public;
  session.session_key = derived_key;
  session.have_key = true;
  session.n2 = MpzFromHex(inner.children[1].text);
  node.lists.trust[session.peer] = 1;  // AIK signature attests the origin
  node.lists.keys[session.peer] = session.session_key;

  session.state = AuthState::kDone;
  Envelope reply;
  reply.from = node.id;
  reply.to = session.peer;
  reply.payload = MakeTuple(
      {MakeId(node.id), MakeId(session.peer),
       MakeEnc(MakePair(MakeId(node.id), MakeNonce(MpzToHex(session.n2))), key_term)});
  return {reply};
}

std::vector<Envelope> HandleConfirmation(AuthNode& node, AuthSession& session,
                                         const std::vector<Term>& elems) {
  (void)node;
  const Term& confirmation = elems[2];
  const Term key_term = MakeSessionKey(MpzToHex(session.session_key));
  if (confirmation.kind != TermKind::kEnc ||
      confirmation.text != sim::KeyFingerprint(key_term)) {
    session.state = AuthState::kFailed;
    return {};
  }
  const Term& inner = confirmation.children[0];
  if (inner.kind != TermKind::kPair || !IsId(inner.children[0], session.peer) ||
      inner.children[1].kind != TermKind::kNonce ||
      MpzFromHex(inner.children[1].text) != session.n2) {
    session.state = AuthState::kFailed;
    return {};
  }
  session.state = AuthState::kDone;
  return {};
}

}  // namespace

std::vector<Envelope> AuthStep(AuthNode& node, const Envelope& incoming,
                               const Authority& authority, const DhGroup& group,
                               SeededRng& rng) {
  const std::vector<Term> elems = TupleElements(incoming.payload);
  if (elems.size() < 3 || !ParseId(elems[0]).has_value() || !IsId(elems[1], node.id)) {
    return {};
  }
  const sim::NodeId claimed = *ParseId(elems[0]);

  // Message 1: a fresh authentication request.
  if (elems.size() == 3 && elems[2].kind == TermKind::kLabel && elems[2].text == kInitLabel) {
    return HandleInit(node, elems, rng);
  }

  // Message 2: the nonce challenge, expected by a fresh initiator.
  if (elems.size() == 3 && elems[2].kind == TermKind::kNonce) {
    AuthSession* session = FindSession(node, claimed, true);
    if (session == nullptr || session->state != AuthState::kInitSent) {
      return {};
    }
    return HandleChallenge(node, *session, elems, group, rng);
  }

  // Message 3: the attestation bundle.
  if ((elems.size() == 6 || elems.size() == 7) && elems[2].kind == TermKind::kDigest) {
    AuthSession* session = FindSession(node, claimed, false);
    if (session == nullptr || session->state != AuthState::kChallenged) {
      return {};
    }
    return HandleAttestation(node, *session, elems, authority, group, rng);
  }

  // Message 4: AIK-signed key info plus the encrypted n2 challenge.
  if (elems.size() == 4 && elems[2].kind == TermKind::kSig &&
      elems[3].kind == TermKind::kEnc) {
    AuthSession* session = FindSession(node, claimed, true);
    if (session == nullptr || session->state != AuthState::kAttested) {
      return {};
    }
    return HandleKeyDelivery(node, *session, elems, authority, group);
  }

  // Message 5: the encrypted confirmation.
  if (elems.size() == 3 && elems[2].kind == TermKind::kEnc) {
    AuthSession* session = FindSession(node, claimed, false);
    if (session == nullptr || session->state != AuthState::kKeyed) {
      return {};
    }
    return HandleConfirmation(node, *session, elems);
  }

  return {};
}

}  // namespace crtvss
