#include <cstdio>

int main() {
  std::puts("deob: workbench CLI (subcommands pending)");
  return 1;
}
