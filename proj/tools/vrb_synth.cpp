// Writes a seeded synthetic fixture (corpus, prompts, stop words, and the
// two embedding files) so the benchmark can run end to end without any
// private dataset.
#include <support/synth.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic attraction-benchmark fixture"};
    std::string out_dir = "fixture";
    vrb::synth::SyntheticOptions options;
    int dim = 64;
    app.add_option("--out-dir", out_dir, "Directory to write into")->capture_default_str();
    app.add_option("--docs", options.n_docs, "Corpus size (max 600)")->capture_default_str();
    app.add_option("--prompts", options.n_prompts, "Prompt count")->capture_default_str();
    app.add_option("--seed", options.seed, "Generator seed")->capture_default_str();
    app.add_option("--dim", dim, "Embedding dimension")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        const auto data = vrb::synth::generate(options);
        const auto paths = vrb::synth::write_fixture_files(out_dir, data, dim);
        std::cout << "wrote " << paths.corpus << "\n      " << paths.prompts << "\n      "
                  << paths.stopwords << "\n      " << paths.doc_embeddings << "\n      "
                  << paths.query_embeddings << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
