#include "crtvss/sim/scenarios.hpp"

#include <algorithm>
#include <functional>

#include "crtvss/attest/auth.hpp"
#include "crtvss/common/error.hpp"
#include "crtvss/common/hex.hpp"
#include "crtvss/dss/threshold.hpp"
#include "crtvss/math/modmath.hpp"
#include "crtvss/math/params_io.hpp"
#include "crtvss/sim/rank.hpp"
#include "crtvss/sim/simulator.hpp"
#include "crtvss/vss/share_io.hpp"
#include "crtvss/vss/vss.hpp"

namespace crtvss::sim {
namespace {

AbParams FixtureAbParams() {
  AbParams params;
  params.m0 = 7;
  params.moduli = {53, 83, 89};
  params.verif_primes = {107, 167, 179};
  params.t = 2;
  params.n = 3;
  params.capacity = 53 * 83;
  return params;
}

// Shared state for one scenario run: the recorder, the registry the
// verify predicates consult, and the honest nodes.
struct World {
  Simulator sim;
  Authority authority;
  std::map<NodeId, AuthNode> nodes;
  DhGroup group = DefaultDhGroup();

  World(const std::string& scenario, uint64_t seed) : sim(scenario, seed) {
    sim.intruder().deduction.dh_modulus = group.p;
  }

  AuthNode& Node(NodeId id) { return nodes.at(id); }

  void AddNode(NodeId id, const std::string& config = "good-config") {
    AuthNode node;
    node.id = id;
    node.tpm = MakeTpm(sim.rng(), config);
    node.config_set = {"good-config"};
    nodes.emplace(id, std::move(node));
    authority.Register(id, &nodes.at(id).tpm);
  }

  void FullMesh() {
    for (auto& [id, node] : nodes) {
      for (const auto& [other, _] : nodes) {
        if (other != id) {
          AddNeighbor(node.lists, other);
        }
      }
    }
  }

  // Honest delivery: transmit (intruder observes), receive, let the node
  // react, and recurse on the replies.
  void DeliverAuth(const Envelope& envelope) {
    sim.Transmit(envelope);
    const auto it = nodes.find(envelope.to);
    if (it == nodes.end()) {
      sim.Drop(envelope, "no such node");
      return;
    }
    sim.Receive(envelope);
    for (const Envelope& reply :
         AuthStep(it->second, envelope, authority, group, sim.rng())) {
      DeliverAuth(reply);
    }
  }

  void RunAuth(NodeId initiator, NodeId responder) {
    DeliverAuth(AuthStart(Node(initiator), responder, sim.rng()));
  }

  // Point-to-point payload under an established session key.
  void SendEncrypted(NodeId from, NodeId to, Term body) {
    const mpz_class& key = Node(from).lists.keys.at(to);
    Envelope envelope{from, to,
                      MakeEnc(std::move(body), MakeSessionKey(MpzToHex(key)))};
    sim.Transmit(envelope);
    sim.Receive(envelope);
  }

  // Marks every established session secret for the rank function.
  RankAssignment CollectRanks() {
    RankAssignment rank;
    for (const auto& [id, node] : nodes) {
      for (const auto& [peer_role, session] : node.sessions) {
        if (session.n2 != 0) {
          rank.MarkSecretNonce(MpzToHex(session.n2));
        }
        if (session.have_key) {
          rank.MarkSecretKeyFingerprint(
              KeyFingerprint(MakeSessionKey(MpzToHex(session.session_key))));
        }
      }
    }
    return rank;
  }
};

ScenarioResult Finish(World& world, const std::string& verdict,
                      std::map<std::string, std::string> outputs = {}) {
  world.sim.Verdict(verdict);
  ScenarioResult result;
  result.transcript = world.sim.transcript();
  result.verdict = verdict;
  result.outputs = std::move(outputs);
  return result;
}

// No bare secret may be derivable from everything the enemy saw.
bool SecretsSafe(World& world) {
  std::vector<Term> violations;
  const bool safe = RankCheck(world.sim.intruder().knowledge, world.CollectRanks(),
                              world.sim.intruder().deduction, &violations);
  world.sim.Signal(0, safe ? "rank check clean"
                           : "rank check violated: " + Encode(violations.front()));
  return safe;
}

// ---------------------------------------------------------------------------
// Authentication framework scenarios
// ---------------------------------------------------------------------------

ScenarioResult RunAuthHonest(const ScenarioConfig& config) {
  World world(config.name, config.seed);
  world.AddNode(1);
  world.AddNode(2);
  world.FullMesh();
  world.RunAuth(1, 2);

  const AuthSession* initiator = FindSession(world.Node(1), 2, true);
  const AuthSession* responder = FindSession(world.Node(2), 1, false);
  const bool done = initiator != nullptr && responder != nullptr &&
                    initiator->state == AuthState::kDone &&
                    responder->state == AuthState::kDone &&
                    initiator->session_key == responder->session_key;
  world.sim.Signal(1, std::string("initiator ") + AuthStateName(initiator->state));
  world.sim.Signal(2, std::string("responder ") + AuthStateName(responder->state));

  std::vector<Term> violations;
  const bool secrets_safe = RankCheck(world.sim.intruder().knowledge, world.CollectRanks(),
                                      world.sim.intruder().deduction, &violations);
  world.sim.Signal(0, secrets_safe ? "rank check clean" : "rank check violated");
  return Finish(world, done && secrets_safe ? kVerdictPass : kVerdictAttackSucceeded);
}

ScenarioResult RunAuthUnknownNeighbor(const ScenarioConfig& config) {
  World world(config.name, config.seed);
  world.AddNode(1);
  world.AddNode(2);
  // Only the initiator knows the responder; the responder has never heard
  // of node 1 and must drop the request without any reply.
  AddNeighbor(world.Node(1).lists, 2);
  world.RunAuth(1, 2);

  const AuthSession* initiator = FindSession(world.Node(1), 2, true);
  const bool dropped = FindSession(world.Node(2), 1, false) == nullptr &&
                       initiator->state == AuthState::kInitSent;
  world.sim.Signal(1, "initiator timed out awaiting challenge");
  return Finish(world, dropped ? kVerdictPass : kVerdictAttackSucceeded);
}

ScenarioResult RunAuthCompromisedTpm(const ScenarioConfig& config) {
  World world(config.name, config.seed);
  world.AddNode(1);
  world.AddNode(2);
  world.FullMesh();
  world.Node(1).tpm.compromised = true;
  world.RunAuth(1, 2);

  const bool blocked = world.Node(2).lists.trust.at(1) == -1 &&
                       !world.Node(2).lists.keys.contains(1) &&
                       FindSession(world.Node(2), 1, false)->state == AuthState::kFailed;
  world.sim.Signal(2, "responder set T[1] = -1");
  return Finish(world, blocked ? kVerdictPass : kVerdictAttackSucceeded);
}

// ---------------------------------------------------------------------------
// Replay attack scenarios
// ---------------------------------------------------------------------------

// The alpha/beta interleaving: the enemy imitates initiator A towards
// responder B, harvesting A's attestation bundle through an auxiliary run
// it answers itself. `enemy_owns_exponent` is the fault injection that
// hands the enemy B's DH private exponent, proving the harness detects a
// successful attack when one is possible.
ScenarioResult RunReplayAlphaBeta(const ScenarioConfig& config, bool enemy_owns_exponent) {
  World world(config.name, config.seed);
  world.AddNode(1);  // A
  world.AddNode(2);  // B
  world.FullMesh();
  IntruderState& enemy = world.sim.intruder();
  // Public initial knowledge.
  enemy.Observe(MakeId(1));
  enemy.Observe(MakeId(2));
  enemy.Observe(MakeLabel("INIT"));

  // alpha.1: forged INIT in A's name. The script only sends what the
  // enemy can actually derive.
  const Term alpha1 = MakeTuple({MakeId(1), MakeId(2), MakeLabel("INIT")});
  if (!CanDerive(alpha1, enemy.knowledge, enemy.deduction)) {
    return Finish(world, kVerdictAttackFailed);
  }
  Envelope alpha1_env{1, 2, alpha1};
  world.sim.Transmit(alpha1_env);
  world.sim.Receive(alpha1_env);
  std::vector<Envelope> replies =
      AuthStep(world.Node(2), alpha1_env, world.authority, world.group, world.sim.rng());

  // alpha.2: B's challenge, intercepted.
  const Envelope alpha2 = replies.at(0);
  world.sim.Transmit(alpha2);
  world.sim.Drop(alpha2, "intercepted by enemy");
  const std::string n1_hex = TupleElements(alpha2.payload).at(2).text;

  // beta.1: A genuinely initiates with B; the enemy blocks it and plays B.
  const Envelope beta1 = AuthStart(world.Node(1), 2, world.sim.rng());
  world.sim.Transmit(beta1);
  world.sim.Drop(beta1, "blocked by enemy");

  // beta.2: the enemy relays B's alpha challenge into the beta run.
  const Term beta2 = MakeTuple({MakeId(2), MakeId(1), MakeNonce(n1_hex)});
  if (!CanDerive(beta2, enemy.knowledge, enemy.deduction)) {
    return Finish(world, kVerdictAttackFailed);
  }
  Envelope beta2_env{2, 1, beta2};
  world.sim.Transmit(beta2_env);
  world.sim.Receive(beta2_env);
  replies = AuthStep(world.Node(1), beta2_env, world.authority, world.group, world.sim.rng());

  // beta.3: A's genuine attestation bundle, harvested...
  const Envelope beta3 = replies.at(0);
  world.sim.Transmit(beta3);
  world.sim.Signal(0, "enemy harvested DS_A, PS_A, g^x from beta.3");

  // ...and replayed verbatim as alpha.3 (same n1, so B's checks pass).
  world.sim.Receive(beta3);
  replies = AuthStep(world.Node(2), beta3, world.authority, world.group, world.sim.rng());
  if (replies.empty()) {
    world.sim.Signal(2, "responder rejected the replayed bundle");
    return Finish(world, kVerdictAttackFailed);
  }

  // alpha.4: B accepts the replay and answers; the enemy holds the message.
  const Envelope alpha4 = replies.at(0);
  world.sim.Transmit(alpha4);
  world.sim.Drop(alpha4, "held by enemy");

  AuthSession* responder = FindSession(world.Node(2), 1, false);
  if (enemy_owns_exponent) {
    // Fault injection: the enemy owns B's DH private exponent.
    enemy.Observe(MakeDhExponent(MpzToHex(responder->dh_exponent)));
    world.sim.Signal(0, "fault injection: enemy owns B's DH exponent");
  }

  // alpha.5 would need {A || n2} under k_AB. Can the enemy derive it?
  const Term key_term = MakeSessionKey(MpzToHex(responder->session_key));
  const Term needed =
      MakeEnc(MakePair(MakeId(1), MakeNonce(MpzToHex(responder->n2))), key_term);
  const bool can_finish = CanDerive(needed, enemy.knowledge, enemy.deduction);

  RankAssignment rank = world.CollectRanks();
  std::vector<Term> violations;
  const bool secrets_safe =
      RankCheck(enemy.knowledge, rank, enemy.deduction, &violations);

  if (can_finish) {
    const Term alpha5 = MakeTuple({MakeId(1), MakeId(2), needed});
    Envelope alpha5_env{1, 2, alpha5};
    world.sim.Transmit(alpha5_env);
    world.sim.Receive(alpha5_env);
    AuthStep(world.Node(2), alpha5_env, world.authority, world.group, world.sim.rng());
    const bool responder_done = responder->state == AuthState::kDone;
    world.sim.Signal(2, std::string("responder ") + AuthStateName(responder->state));
    return Finish(world,
                  responder_done ? kVerdictAttackSucceeded : kVerdictAttackFailed);
  }

  world.sim.Signal(0, "enemy learns neither n2 nor the encrypted confirmation");
  world.sim.Signal(2, std::string("responder stuck awaiting message 5 in state ") +
                          AuthStateName(responder->state));
  world.sim.Signal(0, secrets_safe ? "rank check clean" : "rank check violated");
  return Finish(world,
                secrets_safe ? kVerdictAttackFailed : kVerdictAttackSucceeded);
}

ScenarioResult RunReplayAlphaOnly(const ScenarioConfig& config) {
  World world(config.name, config.seed);
  world.AddNode(1);
  world.AddNode(2);
  world.FullMesh();
  IntruderState& enemy = world.sim.intruder();
  enemy.Observe(MakeId(1));
  enemy.Observe(MakeId(2));
  enemy.Observe(MakeLabel("INIT"));

  const Term alpha1 = MakeTuple({MakeId(1), MakeId(2), MakeLabel("INIT")});
  Envelope alpha1_env{1, 2, alpha1};
  world.sim.Transmit(alpha1_env);
  world.sim.Receive(alpha1_env);
  const std::vector<Envelope> replies =
      AuthStep(world.Node(2), alpha1_env, world.authority, world.group, world.sim.rng());
  const Envelope alpha2 = replies.at(0);
  world.sim.Transmit(alpha2);
  world.sim.Drop(alpha2, "intercepted by enemy");
  const std::string n1_hex = TupleElements(alpha2.payload).at(2).text;

  // Without the auxiliary run there is no DS_A to replay: the genuine
  // bundle B would accept is underivable.
  const std::string im_hex = world.authority.QuoteIm(1, n1_hex);
  const DaaSignature genuine_ds = DaaSign(world.Node(1).tpm, 1, im_hex);
  const Term ds_term = MakeSig(MakeDigest(genuine_ds.im_hex),
                               "daa/1/" + genuine_ds.tag_hex);
  const bool can_forge = CanDerive(ds_term, enemy.knowledge, enemy.deduction);
  world.sim.Signal(0, can_forge ? "enemy forged a DAA signature"
                                : "enemy cannot form message 3: no DS_A");
  return Finish(world, can_forge ? kVerdictAttackSucceeded : kVerdictAttackFailed);
}

// ---------------------------------------------------------------------------
// Cheating scenarios
// ---------------------------------------------------------------------------

constexpr NodeId kDistributor = 10;

// Election and mutual attestation of the distribution phase; returns the
// ids that sent AGREE.
std::vector<NodeId> RunElection(World& world, const std::vector<NodeId>& participants) {
  const AikSignature election_sig =
      AikSign(world.Node(kDistributor).tpm, kDistributor, "AUTH-election");
  const Term announce =
      MakeTuple({MakeId(kDistributor), MakeLabel("AUTH"),
                 MakeSig(MakeLabel("AUTH-election"), "aik/10/" + election_sig.tag_hex)});
  for (NodeId participant : participants) {
    Envelope env{kDistributor, participant, announce};
    world.sim.Transmit(env);
    world.sim.Receive(env);
  }

  std::vector<NodeId> agreed;
  for (NodeId participant : participants) {
    // Participant authenticates to D, then D attests back.
    world.RunAuth(participant, kDistributor);
    world.RunAuth(kDistributor, participant);
    if (world.Node(participant).lists.trust[kDistributor] == 1) {
      Envelope agree{participant, kDistributor,
                     MakeTuple({MakeId(participant), MakeId(kDistributor),
                                MakeLabel("AGREE")})};
      world.sim.Transmit(agree);
      world.sim.Receive(agree);
      agreed.push_back(participant);
    } else {
      world.sim.Signal(participant, "refused: distributor not trusted");
    }
  }
  return agreed;
}

ScenarioResult RunCheatDistributor(const ScenarioConfig& config, const std::string& kind) {
  World world(config.name, config.seed);
  world.AddNode(kDistributor);
  for (NodeId id : {NodeId{1}, NodeId{2}, NodeId{3}}) {
    world.AddNode(id);
  }
  world.FullMesh();
  const AbParams params = config.params.value_or(FixtureAbParams());

  if (kind == "unattested") {
    world.Node(kDistributor).tpm.compromised = true;
  }

  const std::vector<NodeId> agreed = RunElection(world, {1, 2, 3});
  world.sim.Signal(kDistributor, "AGREE count: " + std::to_string(agreed.size()));
  if (agreed.size() < params.n) {
    world.sim.Signal(kDistributor, "distribution aborted: not enough participants");
    return Finish(world, kind == "unattested" ? kVerdictCheatBlocked
                                              : kVerdictReconstructionImpossible);
  }

  if (kind == "oversized-y") {
    // Attested code refuses to emit a lifted value at or above capacity.
    try {
      SeededRng& rng = world.sim.rng();
      const mpz_class oversized_mask = params.capacity / params.m0 + 1;
      SplitMaskedWithMask(5, params, oversized_mask, rng);
      return Finish(world, kVerdictAttackSucceeded);  // must never happen
    } catch (const Error& err) {
      world.sim.Signal(kDistributor,
                       std::string("trusted dealer refused oversized y: ") + err.what());
      return Finish(world, kVerdictCheatBlocked);
    }
  }

  const auto [dealing, masked] = SplitMasked(5, params, world.sim.rng());
  const Bulletin bulletin = MakeBulletin(dealing);
  const Term bulletin_term =
      MakeTuple({MakeId(kDistributor), MakeLabel("PUBLIC"),
                 MakeDigest(DigestToHex(Sha1::Hash(BulletinToJson(bulletin))))});
  for (NodeId participant : agreed) {
    Envelope env{kDistributor, participant, bulletin_term};
    world.sim.Transmit(env);
    world.sim.Receive(env);
  }

  bool any_rejected = false;
  for (NodeId participant : agreed) {
    Share share = dealing.shares[participant - 1];
    if (kind == "bad-share" && participant == 2) {
      share.value = (share.value + 1) % share.modulus;
    }
    world.SendEncrypted(
        kDistributor, participant,
        MakePair(MakeLabel("share"),
                 MakePair(MakeInteger(std::to_string(share.index)),
                          MakeInteger(MpzToHex(share.value)))));
    const bool valid = VerifyShare(share, dealing.commitments[participant - 1]);
    if (!valid) {
      any_rejected = true;
      world.sim.Signal(participant,
                       "commitment mismatch: share " + std::to_string(participant) +
                           " rejected");
      Envelope reject{participant, kDistributor,
                      MakeTuple({MakeId(participant), MakeId(kDistributor),
                                 MakeLabel("REJECT")})};
      world.sim.Transmit(reject);
      world.sim.Receive(reject);
    } else {
      world.sim.Signal(participant, "share verified against commitment");
    }
  }

  if (kind == "bad-share") {
    return Finish(world, any_rejected ? kVerdictCheatBlocked : kVerdictAttackSucceeded);
  }
  if (!any_rejected && !SecretsSafe(world)) {
    return Finish(world, kVerdictAttackSucceeded);
  }
  return Finish(world, any_rejected ? kVerdictCheatBlocked : kVerdictPass);
}

ScenarioResult RunCheatParticipant(const ScenarioConfig& config, size_t cheater_count) {
  World world(config.name, config.seed);
  for (NodeId id : {NodeId{1}, NodeId{2}, NodeId{3}}) {
    world.AddNode(id);
  }
  world.FullMesh();
  const AbParams params = config.params.value_or(FixtureAbParams());

  // Distribution already happened: shares at the nodes, bulletin public.
  const auto [dealing, masked] = SplitMasked(5, params, world.sim.rng());
  const std::vector<NodeId> cheaters = [&] {
    std::vector<NodeId> out;
    for (size_t i = 0; i < cheater_count; ++i) {
      out.push_back(2 + i);  // nodes 2, 3, ...
    }
    return out;
  }();

  // Node 1 reconstructs, pulling in partners until a coalition of t
  // honest-looking shares verifies.
  const NodeId reconstructor = 1;
  std::vector<Share> collected = {dealing.shares[0]};
  std::vector<size_t> coalition = {1};
  bool impossible = false;
  for (NodeId partner = 2; partner <= 3 && collected.size() < params.t; ++partner) {
    // Trust gate before the exchange (partner authenticates to node 1).
    world.RunAuth(partner, reconstructor);
    if (world.Node(reconstructor).lists.trust[partner] != 1) {
      world.sim.Signal(reconstructor, "partner " + std::to_string(partner) + " untrusted");
      continue;
    }
    Share share = dealing.shares[partner - 1];
    const bool cheats = std::find(cheaters.begin(), cheaters.end(), partner) != cheaters.end();
    if (cheats) {
      share.value = (share.value + 1) % share.modulus;
    }
    world.SendEncrypted(partner, reconstructor,
                        MakePair(MakeLabel("share"),
                                 MakePair(MakeInteger(std::to_string(share.index)),
                                          MakeInteger(MpzToHex(share.value)))));
    if (!VerifyShare(share, dealing.commitments[partner - 1])) {
      world.sim.Signal(reconstructor, "cheater detected at index " +
                                          std::to_string(partner) +
                                          ", coalition rebuilt without it");
      continue;
    }
    collected.push_back(share);
    coalition.push_back(partner);
  }

  if (collected.size() < params.t) {
    world.sim.Signal(reconstructor, "not enough honest shares remain");
    impossible = true;
  }

  if (impossible) {
    return Finish(world, kVerdictReconstructionImpossible);
  }

  const CoalitionContext ctx = MakeCoalitionContext(params, coalition);
  const ReconstructResult result =
      Reconstruct(collected, ctx, params.m0, DealingMode::kMasked);
  world.sim.Signal(reconstructor, "reconstructed secret",
                   {{"secret", MpzToHex(result.secret)}});
  const bool correct = result.secret == masked.secret;
  if (!correct || !SecretsSafe(world)) {
    return Finish(world, kVerdictAttackSucceeded);
  }
  return Finish(world, cheater_count == 0 ? kVerdictPass : kVerdictCheatBlocked,
                {{"secret", MpzToHex(result.secret)}});
}

// ---------------------------------------------------------------------------
// Distributed signing scenarios
// ---------------------------------------------------------------------------

constexpr NodeId kRequestor = 20;

class WorldAttestation : public AttestationService {
 public:
  WorldAttestation(World& world, NodeId requestor) : world_(world), requestor_(requestor) {}

  int CachedTrust(size_t node) override {
    const auto it = world_.Node(requestor_).lists.trust.find(node);
    return it == world_.Node(requestor_).lists.trust.end() ? 0 : it->second;
  }

  bool Authenticate(size_t node) override {
    world_.RunAuth(node, requestor_);
    return CachedTrust(node) == 1;
  }

 private:
  World& world_;
  NodeId requestor_;
};

enum class SignTamper { kNone, kRound1, kRound2 };

ScenarioResult RunSignScenario(const ScenarioConfig& config, SignTamper tamper) {
  World world(config.name, config.seed);
  world.AddNode(kRequestor);
  for (NodeId id : {NodeId{1}, NodeId{2}, NodeId{3}}) {
    world.AddNode(id);
  }
  world.FullMesh();
  const AbParams params = config.params.value_or(FixtureAbParams());
  const CurveParams& curve = ToyCurve();

  // Key material: the CA key was dealt beforehand; nodes hold d's shares.
  const SigningKeyMaterial key =
      MakeSigningKey(5, params, curve, /*nonce_bound=*/4, world.sim.rng());

  // Trusted choice phase.
  for (NodeId id : {NodeId{1}, NodeId{2}, NodeId{3}}) {
    Envelope request{kRequestor, id,
                     MakeTuple({MakeId(kRequestor), MakeId(id), MakeLabel("REQUEST")})};
    world.sim.Transmit(request);
    world.sim.Receive(request);
  }
  WorldAttestation service(world, kRequestor);
  CoalitionContext ctx;
  try {
    ctx = TrustedChoice({1, 2, 3}, params.t, params.n, params, service);
  } catch (const Error& err) {
    world.sim.Signal(kRequestor, std::string("coalition failed: ") + err.what());
    return Finish(world, kVerdictReconstructionImpossible);
  }
  std::string coalition_text;
  for (size_t index : ctx.indices) {
    coalition_text += std::to_string(index) + " ";
  }
  world.sim.Signal(kRequestor, "coalition chosen: " + coalition_text);

  // Digest broadcast to the coalition.
  const mpz_class digest = MessageDigestScalar(config.message, curve);
  for (size_t index : ctx.indices) {
    Envelope env{kRequestor, index,
                 MakeTuple({MakeId(kRequestor), MakeId(index), MakeLabel("digest"),
                            MakeDigest(MpzToHex(digest))})};
    world.sim.Transmit(env);
    world.sim.Receive(env);
  }

  // Pairwise keys inside the coalition for the nonce subshare exchange.
  for (size_t i = 0; i < ctx.indices.size(); ++i) {
    for (size_t j = i + 1; j < ctx.indices.size(); ++j) {
      world.RunAuth(ctx.indices[i], ctx.indices[j]);
    }
  }

  for (unsigned attempt = 1; attempt <= 64; ++attempt) {
    SigningSession session = BeginSession(key, ctx.indices, digest, key.nonce_bound);
    const size_t t = session.members.size();

    // Joint nonce generation with encrypted subshare exchange.
    std::vector<mpz_class> rho;
    std::vector<mpz_class> sigma;
    for (size_t j = 0; j < t; ++j) {
      rho.push_back(world.sim.rng().UniformRange(1, key.nonce_bound - 1));
      sigma.push_back(world.sim.rng().UniformRange(1, key.nonce_bound - 1));
    }
    for (size_t j = 0; j < t; ++j) {
      for (size_t i = 0; i < t; ++i) {
        if (i == j) continue;
        const mpz_class& modulus = session.ctx.moduli[i];
        world.SendEncrypted(
            ctx.indices[j], ctx.indices[i],
            MakePair(MakeLabel("nonce-subshare"),
                     MakePair(MakeInteger(MpzToHex(rho[j] % modulus)),
                              MakeInteger(MpzToHex(sigma[j] % modulus)))));
      }
    }
    JointNonceFromDraws(session, rho, sigma);

    // Round 1: broadcast v_i and w_i.
    std::vector<Round1Message> round1;
    for (size_t slot = 0; slot < t; ++slot) {
      round1.push_back(Round1(session, slot));
      Envelope env{session.members[slot].index, kBroadcast,
                   MakeTuple({MakeLabel("round1"), MakeId(session.members[slot].index),
                              MakeInteger(MpzToHex(round1.back().v)),
                              MakePoint(PointToString(round1.back().w))})};
      world.sim.Transmit(env, {{"v", MpzToHex(round1.back().v)},
                               {"w", PointToString(round1.back().w)}});
    }
    if (tamper == SignTamper::kRound1) {
      round1[0].v = (round1[0].v + 1) % session.members[0].modulus;
      world.sim.Signal(0, "enemy tampered the round-1 share of index " +
                              std::to_string(round1[0].index));
    }

    try {
      CombineRound1(session, round1);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kNonInvertibleKA && tamper == SignTamper::kNone) {
        world.sim.Signal(kRequestor, "degenerate nonce, resampling");
        continue;
      }
      world.sim.Signal(kRequestor, std::string("session aborted: ") + err.what());
      return Finish(world, kVerdictCheatBlocked);
    }

    // Round 2: broadcast the kappa-indexed signature shares.
    std::vector<Round2Message> round2;
    for (size_t slot = 0; slot < t; ++slot) {
      round2.push_back(Round2(session, slot));
      std::vector<Term> parts = {MakeLabel("round2"), MakeId(session.members[slot].index)};
      for (const mpz_class& entry : round2.back().sig_candidates) {
        parts.push_back(MakeInteger(MpzToHex(entry)));
      }
      Envelope env{session.members[slot].index, kBroadcast, MakeTuple(std::move(parts))};
      world.sim.Transmit(env);
    }
    if (tamper == SignTamper::kRound2) {
      for (mpz_class& entry : round2[1].sig_candidates) {
        entry = (entry + 1) % session.members[1].modulus;
      }
      world.sim.Signal(0, "enemy tampered the round-2 share of index " +
                              std::to_string(round2[1].index));
    }

    AssembleResult assembled;
    try {
      assembled = AssembleAndSelect(session, round2);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kNoValidCandidate && tamper == SignTamper::kNone) {
        world.sim.Signal(kRequestor, "degenerate signature candidate, resampling");
        continue;
      }
      world.sim.Signal(kRequestor, std::string("no valid candidate: ") + err.what());
      return Finish(world, kVerdictCheatBlocked);
    }

    const bool valid = DssVerify(key.public_key, digest, assembled.signature, curve);
    world.sim.Signal(kRequestor, "signature assembled",
                     {{"r", MpzToHex(assembled.signature.r)},
                      {"s", MpzToHex(assembled.signature.s)},
                      {"kappa", std::to_string(assembled.kappa)},
                      {"verified", valid ? "true" : "false"}});

    // No-leak baseline: none of the private per-member values is
    // derivable from everything the enemy observed. Only meaningful when
    // modulus size rules out accidental numeric collisions with the
    // public broadcasts.
    bool leak_free = true;
    if (BitLength(params.moduli[0]) >= 32) {
      const IntruderState& enemy = world.sim.intruder();
      for (const MemberState& member : session.members) {
        for (const mpz_class& secret_value :
             {member.d_share, member.k_share, member.a_share}) {
          leak_free &= !CanDerive(MakeInteger(MpzToHex(secret_value)), enemy.knowledge,
                                  enemy.deduction);
        }
      }
      world.sim.Signal(0, leak_free ? "no-leak check clean" : "no-leak check violated");
    }

    if (!valid || tamper != SignTamper::kNone || !leak_free || !SecretsSafe(world)) {
      // A tampered run must never reach this point.
      return Finish(world, kVerdictAttackSucceeded);
    }
    return Finish(world, kVerdictPass,
                  {{"r", MpzToHex(assembled.signature.r)},
                   {"s", MpzToHex(assembled.signature.s)},
                   {"kappa", std::to_string(assembled.kappa)},
                   {"curve", AbParamsDigest(params)}});
  }
  world.sim.Signal(kRequestor, "nonce resampling budget exhausted");
  return Finish(world, kVerdictReconstructionImpossible);
}

}  // namespace

std::vector<std::string> ScenarioNames() {
  return {
      "auth-honest",
      "auth-unknown-neighbor",
      "auth-compromised-tpm",
      "replay-alpha-beta",
      "replay-alpha-only",
      "replay-owned-exponent",
      "cheat-distributor-honest",
      "cheat-distributor-unattested",
      "cheat-distributor-bad-share",
      "cheat-distributor-oversized-y",
      "cheat-participant",
      "cheat-participant-overwhelmed",
      "cheat-participant-none",
      "sign-honest",
      "sign-tamper-round1",
      "sign-tamper-round2",
  };
}

ScenarioResult RunScenario(const ScenarioConfig& config) {
  const std::string& name = config.name;
  if (name == "auth-honest") return RunAuthHonest(config);
  if (name == "auth-unknown-neighbor") return RunAuthUnknownNeighbor(config);
  if (name == "auth-compromised-tpm") return RunAuthCompromisedTpm(config);
  if (name == "replay-alpha-beta") return RunReplayAlphaBeta(config, false);
  if (name == "replay-owned-exponent") return RunReplayAlphaBeta(config, true);
  if (name == "replay-alpha-only") return RunReplayAlphaOnly(config);
  if (name == "cheat-distributor-honest") return RunCheatDistributor(config, "honest");
  if (name == "cheat-distributor-unattested") {
    return RunCheatDistributor(config, "unattested");
  }
  if (name == "cheat-distributor-bad-share") return RunCheatDistributor(config, "bad-share");
  if (name == "cheat-distributor-oversized-y") {
    return RunCheatDistributor(config, "oversized-y");
  }
  if (name == "cheat-participant") return RunCheatParticipant(config, 1);
  if (name == "cheat-participant-overwhelmed") return RunCheatParticipant(config, 2);
  if (name == "cheat-participant-none") return RunCheatParticipant(config, 0);
  if (name == "sign-honest") return RunSignScenario(config, SignTamper::kNone);
  if (name == "sign-tamper-round1") return RunSignScenario(config, SignTamper::kRound1);
  if (name == "sign-tamper-round2") return RunSignScenario(config, SignTamper::kRound2);
  throw Error(ErrorCode::kUnknownScenario, "no scenario named " + name);
}

}  // namespace crtvss::sim
