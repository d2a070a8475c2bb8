#include "cli/commands.hpp"

int main(int argc, char** argv) {
  return gupspec::cli::run_cli(argc, argv);
}
