#include <cstdio>

int main() {
  std::puts("pflow: placeholder");
  return 0;
}
