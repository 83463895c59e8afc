#include "doctest.h"

#include <sstream>

#include "fixtures.hpp"
#include "pda/constructors.hpp"
#include "pda/simulator.hpp"

using namespace pda;

TEST_CASE("placement follows the star pattern") {
  const PdaArray a = fixtures::base44();
  const auto lib = FileLibrary::generate(4, 4, 64, 1);
  const auto caches = place(a, lib);
  REQUIRE(caches.size() == 4);
  for (int k = 1; k <= 4; ++k) {
    // Z*N packets each, memory ratio Z/F = 1/2.
    CHECK(caches[k - 1].cached_rows.size() == 2);
    CHECK(caches[k - 1].data.size() == 2u * 4u * 64u);
    for (int j = 1; j <= 4; ++j)
      for (int n = 1; n <= 4; ++n)
        CHECK(caches[k - 1].has(n, j) == a.cell(j, k).is_star());
  }
}

TEST_CASE("placement rejects mismatched libraries and invalid arrays") {
  CHECK_THROWS_AS(place(fixtures::base44(), FileLibrary::generate(4, 5, 64, 1)),
                  DimensionMismatchError);
  CHECK_THROWS_AS(place(parse_grid("1 1\n"), FileLibrary::generate(1, 1, 8, 1)),
                  C3Violation);
}

TEST_CASE("delivery on the 4x4 example decodes every demand pattern") {
  const PdaArray a = fixtures::base44();
  const auto lib = FileLibrary::generate(4, 4, 64, 99);
  const auto caches = place(a, lib);
  for (const std::vector<int>& demand :
       {std::vector<int>{1, 2, 3, 4}, std::vector<int>{1, 1, 1, 1}}) {
    const DeliveryTranscript tr = deliver(a, lib, caches, demand);
    CHECK(tr.messages.size() == 4);
    CHECK(tr.all_decoded());
    CHECK(tr.load == 1);
    CHECK(tr.transmitted_bytes == 4 * 64);
    // Measured bytes over file size equals S/F exactly.
    CHECK(BigRat(tr.transmitted_bytes, int64_t(tr.packets) * tr.packet_bytes) == tr.load);
  }
}

TEST_CASE("delivery on the 2x1 column sends one message") {
  const PdaArray a = fixtures::tiny();
  const auto lib = FileLibrary::generate(1, 2, 32, 5);
  const auto caches = place(a, lib);
  const DeliveryTranscript tr = deliver(a, lib, caches, {1});
  CHECK(tr.messages.size() == 1);
  CHECK(tr.messages[0].cells == std::vector<std::pair<int, int>>{{2, 1}});
  CHECK(tr.all_decoded());
  CHECK(tr.load == BigRat(1, 2));
}

TEST_CASE("delivery rejects bad demands") {
  const PdaArray a = fixtures::tiny();
  const auto lib = FileLibrary::generate(2, 2, 16, 5);
  const auto caches = place(a, lib);
  CHECK_THROWS_AS(deliver(a, lib, caches, {3}), BadDemandError);
  CHECK_THROWS_AS(deliver(a, lib, caches, {1, 1}), BadDemandError);
}

TEST_CASE("library generation is deterministic per seed") {
  const auto a = FileLibrary::generate(2, 3, 64, 42);
  const auto b = FileLibrary::generate(2, 3, 64, 42);
  const auto c = FileLibrary::generate(2, 3, 64, 43);
  CHECK(a.data == b.data);
  CHECK(a.data != c.data);
}

TEST_CASE("identical seeds give identical transcripts") {
  const PdaArray a = mn_pda(4, 2);
  const auto lib = FileLibrary::generate(4, 6, 64, 7);
  const auto caches = place(a, lib);
  const auto tr1 = deliver(a, lib, caches, {2, 4, 1, 3});
  const auto tr2 = deliver(a, lib, caches, {2, 4, 1, 3});
  std::ostringstream s1, s2;
  write_transcript(s1, tr1);
  write_transcript(s2, tr2);
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().find("demand 2,4,1,3") != std::string::npos);
  // One line per message plus two header lines and one summary line.
  int lines = 0;
  for (char ch : s1.str()) lines += ch == '\n';
  CHECK(lines == 4 + 3);
}

TEST_CASE("exhaustive sweep covers every demand vector") {
  const PdaArray a = fixtures::base44();
  const auto lib = FileLibrary::generate(4, 4, 16, 3);
  const SweepSummary s = sweep_exhaustive(a, lib);
  CHECK(s.demands == 256);
  CHECK(s.all_decoded);
  CHECK(s.max_load == 1);
  CHECK(s.mean_load == 1);
}

TEST_CASE("exhaustive sweep on the MN array has load 2/3") {
  const PdaArray a = mn_pda(4, 2);
  const auto lib = FileLibrary::generate(4, 6, 16, 3);
  const SweepSummary s = sweep_exhaustive(a, lib);
  CHECK(s.demands == 256);
  CHECK(s.all_decoded);
  CHECK(s.max_load == BigRat(4, 6));
}

TEST_CASE("exhaustive sweep honors its budget") {
  const PdaArray a = fixtures::base44();
  const auto lib = FileLibrary::generate(4, 4, 16, 3);
  SweepOptions opts;
  opts.max_exhaustive_demands = 100;
  CHECK_THROWS_AS(sweep_exhaustive(a, lib, opts), BudgetExceededError);
}

TEST_CASE("sampled sweep on the 48-user construction") {
  const PdaArray a = construct_pmt(fixtures::base44_base(), 3, 2);
  const auto lib = FileLibrary::generate(48, 64, 16, 11);
  const SweepSummary s = sweep_sampled(a, lib, 20, 123);
  CHECK(s.demands == 20);
  CHECK(s.all_decoded);
  CHECK(s.max_load == 1);
}

TEST_CASE("sampled sweep is deterministic per seed") {
  const PdaArray a = mn_pda(4, 2);
  const auto lib = FileLibrary::generate(4, 6, 16, 3);
  const SweepSummary s1 = sweep_sampled(a, lib, 10, 5);
  const SweepSummary s2 = sweep_sampled(a, lib, 10, 5);
  CHECK(s1.demands == s2.demands);
  CHECK(s1.max_load == s2.max_load);
  CHECK(s1.mean_load == s2.mean_load);
}

TEST_CASE("transcript digests depend on the payload") {
  const std::vector<uint8_t> x{1, 2, 3};
  const std::vector<uint8_t> y{1, 2, 4};
  CHECK(fnv1a64(x) != fnv1a64(y));
  CHECK(fnv1a64(x) == fnv1a64(std::vector<uint8_t>{1, 2, 3}));
}
