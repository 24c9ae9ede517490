// Writes every fixture of the registry as fixtures/<id>.json.

#include <glocal/glocal.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_fixtures <output-dir>\n";
        return 2;
    }
    std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    for (const auto& id : glocal::fixture_ids()) {
        auto path = dir / (id + ".json");
        glocal::write_text_file(path.string(), glocal::dump(glocal::to_json(glocal::fixture(id).payload)));
        std::cout << path.string() << "\n";
    }
}
