#include <sstream>
#include <doctest.h>

#include <stdexcept>

#include "crsim/config.hpp"

using namespace crsim;

TEST_CASE("defaults validate and validation is idempotent") {
  SimConfig cfg;
  SimConfig v1 = validate_config(cfg);
  SimConfig v2 = validate_config(v1);
  CHECK(v1.num_channels == v2.num_channels);
  CHECK(v1.lambda_p == v2.lambda_p);
  CHECK(v1.horizon == v2.horizon);
  CHECK(cfg.bits_per_slot() == 1000);
  CHECK(cfg.pu_packet_slots() == 100);
  CHECK(cfg.su_packet_slots() == 60);
}

TEST_CASE("validation names the offending field") {
  SimConfig cfg;
  cfg.num_channels = 0;
  CHECK_THROWS_WITH_AS(validate_config(cfg), "num_channels must be >= 1", std::invalid_argument);

  cfg = SimConfig{};
  cfg.num_pairs = 0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = SimConfig{};
  cfg.slot_duration = 0.0000015;  // 1.5 bits per slot
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = SimConfig{};
  cfg.pu_packet_bits = 100500;  // not slot-aligned at 1000 bits per slot
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = SimConfig{};
  cfg.su_packet_bits = 0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = SimConfig{};
  cfg.horizon = 10;  // one frame needs 11 slots at D = 10
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = SimConfig{};
  cfg.lambda_p = -1;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("zero-rate edge cases stay valid") {
  SimConfig cfg;
  cfg.lambda_p = 0;
  cfg.pu_packet_bits = 0;  // irrelevant without PU arrivals
  CHECK_NOTHROW(validate_config(cfg));
  cfg.lambda_s = 0;
  cfg.su_packet_bits = 0;
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("frame layout arithmetic") {
  SimConfig cfg;
  cfg.num_pairs = 7;
  FrameLayout fl = frame_layout(cfg);
  CHECK(fl.control_slots == 1);
  CHECK(fl.mini_slots == 14);
  CHECK(fl.data_slots == 10);
  CHECK(fl.frame_length == 11);
  CHECK(fl.control_slot_of(0) == 0);
  CHECK(fl.control_slot_of(3) == 33);

  SUBCASE("locate_slot classifies control and data slots") {
    CHECK(locate_slot(fl, 0).kind == SlotKind::control);
    CHECK(locate_slot(fl, 1).kind == SlotKind::data);
    CHECK(locate_slot(fl, 10).kind == SlotKind::data);
    CHECK(locate_slot(fl, 11).kind == SlotKind::control);
    CHECK(locate_slot(fl, 11).frame == 1);
    CHECK(locate_slot(fl, 23).data_offset == 0);
  }

  SUBCASE("locate_slot and slot_of are inverse") {
    for (Slot t = 0; t < 5 * fl.frame_length; ++t) {
      CHECK(slot_of(fl, locate_slot(fl, t)) == t);
    }
    CHECK_THROWS_AS(slot_of(fl, SlotRef{0, SlotKind::data, 10}), std::out_of_range);
  }
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# comment line\n"
      "num_channels = 20\n"
      "lambda_p=2.5   # trailing comment\n"
      "protocol = probability\n"
      "\n"
      "seed = 77\n");
  SimConfig cfg = parse_config(in);
  CHECK(cfg.num_channels == 20);
  CHECK(cfg.lambda_p == 2.5);
  CHECK(cfg.protocol == Protocol::probability);
  CHECK(cfg.seed == 77);

  SUBCASE("unknown keys are rejected by name") {
    std::istringstream bad("nun_channels = 20\n");
    CHECK_THROWS_WITH_AS(parse_config(bad), "unknown config key 'nun_channels'",
                         std::invalid_argument);
  }
  SUBCASE("bad values carry the key") {
    std::istringstream bad("num_channels = ten\n");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
    std::istringstream neg("seed = -4\n");
    CHECK_THROWS_AS(parse_config(neg), std::invalid_argument);
    std::istringstream noeq("num_channels\n");
    CHECK_THROWS_AS(parse_config(noeq), std::invalid_argument);
  }
}

TEST_CASE("protocol names round-trip") {
  for (Protocol p : {Protocol::gcs_srv, Protocol::random_select, Protocol::probability}) {
    CHECK(protocol_from_name(protocol_name(p)) == p);
  }
  CHECK_THROWS_AS(protocol_from_name("greedy"), std::invalid_argument);
}
