#include <iostream>

#include "scpulse/app/config.hpp"
#include "scpulse/app/run.hpp"

int main(int argc, char** argv) {
  const scpulse::app::ParseResult parsed = scpulse::app::parse_cli(argc, argv);
  if (!parsed.config) return parsed.exit_code;
  return scpulse::app::run(*parsed.config, std::cout, std::cerr);
}
