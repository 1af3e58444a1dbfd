#pragma once

#include <string>
#include <vector>

#include "crtvss/vss/share.hpp"

namespace crtvss {

// One share file bundles the private residue with its public commitment:
// {version, index, modulus, value, commitment: {p, g, z}, mode}.
struct ShareFile {
  Share share;
  Commitment commitment;
  DealingMode mode = DealingMode::kMasked;
};

std::string ShareFileToJson(const ShareFile& file, bool pretty = false);
ShareFile ShareFileFromJson(const std::string& text);
void WriteShareFile(const ShareFile& file, const std::string& path);
ShareFile ReadShareFile(const std::string& path);

// The public bulletin: ordered commitments plus the parameter digest they
// belong to.
struct Bulletin {
  std::string params_digest;
  std::vector<Commitment> commitments;
};

Bulletin MakeBulletin(const Dealing& dealing);
std::string BulletinToJson(const Bulletin& bulletin, bool pretty = false);
Bulletin BulletinFromJson(const std::string& text);
void WriteBulletinFile(const Bulletin& bulletin, const std::string& path);
Bulletin ReadBulletinFile(const std::string& path);

}  // namespace crtvss
