// Stand-in external model for adapter tests. Speaks the TAG / CORRUPT line
// protocol on stdin/stdout.
//
//   dummy_model echo      TAG -> all 'a'; CORRUPT -> sentence unchanged
//   dummy_model slot4     TAG -> 'b' at slot 4 only
//   dummy_model short     TAG -> 25-character mask
//   dummy_model tab       CORRUPT -> reply with a raw tab
//   dummy_model empty     every reply is empty
//   dummy_model err       every reply is "ERR unsupported"
//   dummy_model delegate  TAG -> {OT,PM}; CORRUPT -> built-in engine, seed from
//                         the sentence digest
//   dummy_model sleep     never replies in time
//   dummy_model crash     exits on the first request
//   dummy_model flaky     exits on every second request it receives

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include "gecforge/adapter.hpp"
#include "gecforge/corrupt.hpp"
#include "gecforge/rng.hpp"

namespace gf = gecforge;

int main(int argc, char** argv) {
  std::string mode = argc > 1 ? argv[1] : "echo";
  std::ios::sync_with_stdio(false);
  std::string line;
  std::size_t served = 0;
  auto reply = [](const std::string& s) {
    std::cout << s << '\n';
    std::cout.flush();
  };
  while (std::getline(std::cin, line)) {
    ++served;
    if (mode == "crash" || (mode == "flaky" && served % 2 == 0)) return 3;
    if (mode == "sleep") {
      std::this_thread::sleep_for(std::chrono::seconds(30));
      continue;
    }
    if (mode == "empty") {
      reply("");
      continue;
    }
    if (mode == "err") {
      reply("ERR unsupported");
      continue;
    }
    auto tab = line.find('\t');
    std::string verb = line.substr(0, tab);
    if (verb == "TAG" && tab != std::string::npos) {
      gf::TagSet tags;
      if (mode == "slot4") tags.set(4);
      if (mode == "delegate") tags = {gf::ErrorTag::OT, gf::ErrorTag::PM};
      std::string mask = gf::encode_mask(tags);
      if (mode == "short") mask.pop_back();
      reply(mask);
    } else if (verb == "CORRUPT" && tab != std::string::npos) {
      auto tab2 = line.find('\t', tab + 1);
      if (tab2 == std::string::npos) {
        reply("ERR malformed");
        continue;
      }
      std::string mask = line.substr(tab + 1, tab2 - tab - 1);
      std::string text;
      try {
        text = gf::protocol::unescape(line.substr(tab2 + 1));
      } catch (const gf::Error&) {
        reply("ERR malformed");
        continue;
      }
      if (mode == "tab") {
        reply(text + "\tx");
      } else if (mode == "delegate") {
        gf::Sentence s(text);
        auto [out, rep] = gf::corrupt(s, gf::decode_mask(mask), gf::fnv1a64(text));
        reply(gf::protocol::escape(out.text));
      } else {
        reply(gf::protocol::escape(text));
      }
    } else {
      reply("ERR malformed");
    }
  }
  return 0;
}
