// Writes the level-13 certificates to the given directory.
#include "converse13/proof13.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_certificates <output-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  const std::pair<const char*, converse::Certificate> certs[] = {
      {"level13_f.json", converse::level13::f_certificate()},
      {"level13_g.json", converse::level13::g_certificate()},
  };
  for (const auto& [name, cert] : certs) {
    std::ofstream out(dir + "/" + name);
    if (!out) {
      std::cerr << "cannot write " << dir << "/" << name << "\n";
      return 2;
    }
    out << converse::certificate_to_json(cert);
  }
  return 0;
}
