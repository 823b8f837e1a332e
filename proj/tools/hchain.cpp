// hchain: command-line front end for the harmonic-chain library.
//
// Exit codes: 0 success, 1 validation error, 2 runtime or convergence error.

#include <iostream>
#include <string>
#include <vector>

#include "hchain/cli_io.hpp"
#include "hchain/error.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto config = hchain::parse_config(args);
    hchain::write_output(config.out, hchain::render(config));
    return 0;
  } catch (const hchain::HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const hchain::ValidationError& e) {
    std::cerr << "hchain: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hchain: " << e.what() << '\n';
    return 2;
  }
}
