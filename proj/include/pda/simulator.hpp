#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "pda/rational.hpp"
#include "pda/verify.hpp"

namespace pda {

/// Synthetic server library: `files` files of `packets` packets each, with
/// deterministic pseudo-random contents from the recorded seed.
struct FileLibrary {
  int files = 0;
  int packets = 0;
  int packet_bytes = 64;
  uint64_t seed = 0;
  std::vector<uint8_t> data;

  static FileLibrary generate(int files, int packets, int packet_bytes, uint64_t seed);

  /// Packet j of file n (both 1-based).
  std::span<const uint8_t> packet(int file, int packet) const;
};

/// The packets a user stored during placement: every row starred in its
/// column, for every file. Payloads are copied out of the library so that
/// decoding draws on the cache, not the server.
struct UserCache {
  int user = 0;
  std::vector<int> cached_rows;  // ascending
  std::vector<uint8_t> data;     // [file-major][cached_rows order]
  int packet_bytes = 0;

  bool has(int file, int row) const;
  std::span<const uint8_t> payload(int file, int row) const;
};

/// Populates one cache per column from the star pattern. The array must be a
/// valid PDA whose row count matches the library's packet count.
std::vector<UserCache> place(const PdaArray& pda, const FileLibrary& library);

struct BroadcastMessage {
  int symbol = 0;
  std::vector<std::pair<int, int>> cells;  // contributing (row, user) pairs
  std::vector<uint8_t> payload;            // XOR of the requested packets
};

struct DeliveryTranscript {
  std::vector<int> demand;
  uint64_t library_seed = 0;
  int files = 0;
  int packets = 0;
  int packet_bytes = 0;
  std::vector<BroadcastMessage> messages;  // exactly S, in symbol order
  std::vector<bool> decoded;               // per user: requested file recovered bit-exactly
  int64_t transmitted_bytes = 0;
  BigRat load;  // S/F

  bool all_decoded() const;
};

/// Runs one delivery round: the server broadcasts one XOR message per
/// symbol, then every user decodes each missing packet of its requested file
/// from the matching message and its cached packets. Throws
/// DecodeFailureError if a needed packet is not cached (a C3 violation or an
/// implementation defect).
DeliveryTranscript deliver(const PdaArray& pda, const FileLibrary& library,
                           const std::vector<UserCache>& caches,
                           const std::vector<int>& demand);

struct SweepOptions {
  int64_t max_exhaustive_demands = 1'000'000;
};

struct SweepSummary {
  int64_t demands = 0;
  bool all_decoded = true;
  BigRat max_load;
  BigRat mean_load;
};

/// Delivery over every demand vector in [1:N]^K.
SweepSummary sweep_exhaustive(const PdaArray& pda, const FileLibrary& library,
                              const SweepOptions& opts = {});

/// Delivery over `count` seeded pseudo-random demand vectors.
SweepSummary sweep_sampled(const PdaArray& pda, const FileLibrary& library, int count,
                           uint64_t seed);

/// Line-delimited transcript export: header records, then one line per
/// message carrying the symbol id, the contributing cells and an FNV-1a
/// digest of the payload.
void write_transcript(std::ostream& out, const DeliveryTranscript& transcript);

uint64_t fnv1a64(std::span<const uint8_t> bytes);

}  // namespace pda
