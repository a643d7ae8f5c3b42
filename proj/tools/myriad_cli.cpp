#include <cstdio>

// Placeholder until the CLI lands.
int main() {
  std::printf("myriad: CLI not wired up yet\n");
  return 1;
}
