// Command-line front end: train the comparative classifier, analyze
// documents into the store, export views and run the HTTP service.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scistory/comparative/classifier.hpp"
#include "scistory/comparative/lexicon.hpp"
#include "scistory/error.hpp"
#include "scistory/resources.hpp"
#include "scistory/service/http_server.hpp"
#include "scistory/service/pipeline.hpp"

namespace {

using namespace scistory;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::io:
      return kExitIo;
    case ErrorCode::configuration:
    case ErrorCode::parameter:
      return kExitUsage;
    default:
      return kExitData;
  }
}

std::string default_model_path() {
  if (const char* env = std::getenv("SCISTORY_MODEL"); env != nullptr && *env != '\0') return env;
  return SCISTORY_DEFAULT_MODEL;
}

struct CommonOptions {
  std::string data_dir;
  std::string model = default_model_path();
  std::string gazetteer;
  std::string linker_url;

  void add_to(CLI::App* app) {
    app->add_option("--data", data_dir, "Data directory (default: $SCISTORY_DATA or ./scistory-data)");
    app->add_option("--model", model, "Trained model JSON")->capture_default_str();
    app->add_option("--gazetteer", gazetteer, "Gazetteer JSON (default: bundled)");
    app->add_option("--linker-url", linker_url, "External entity linker endpoint");
  }

  service::Pipeline pipeline() const {
    service::PipelineConfig config;
    config.model_path = model;
    config.gazetteer_path = gazetteer;
    config.linker_url = linker_url;
    return service::Pipeline(config, data_dir.empty() ? repository::Repository::default_data_dir() : std::filesystem::path(data_dir));
  }
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << "\n";
    return;
  }
  resources::write_file_atomic(path, content + "\n");
}

service::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scientific paper storyline explorer"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Train the comparative-sentence classifier");
  std::string corpus_path, lexicon_path, model_out;
  int folds = 5;
  std::uint64_t seed = 42;
  comparative::TrainOptions train_opts;
  train->add_option("--corpus", corpus_path, "Labeled TSV corpus (default: bundled)");
  train->add_option("--lexicon", lexicon_path, "Keyword lexicon TSV (default: bundled)");
  train->add_option("--out", model_out, "Where to write the model JSON")->required();
  train->add_option("--folds", folds, "Cross-validation folds (0 to skip)")->capture_default_str();
  train->add_option("--seed", seed, "Fold shuffle seed")->capture_default_str();
  train->add_option("--radius", train_opts.radius, "Candidate window radius")->capture_default_str();
  train->add_option("--min-sup", train_opts.min_sup, "Minimum feature support")->capture_default_str();
  train->add_option("--min-conf", train_opts.min_conf, "Minimum feature confidence")->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Analyze a document and store the result");
  CommonOptions analyze_common;
  std::string input, format = "plain", title, date;
  analyze->add_option("file", input, "Document file, '-' for stdin")->required();
  analyze->add_option("--format", format, "plain or structured")
      ->check(CLI::IsMember({"plain", "structured"}))
      ->capture_default_str();
  analyze->add_option("--title", title, "Document title");
  analyze->add_option("--date", date, "Publication date YYYY-MM-DD");
  analyze_common.add_to(analyze);

  // export
  auto* exp = app.add_subcommand("export", "Print a stored view as JSON");
  CommonOptions export_common;
  std::string doc_id, what = "storyline", granularity = "paragraph", level = "sentence", out_path, entity_list;
  exp->add_option("doc_id", doc_id, "Document id (not needed for collection views)");
  exp->add_option("--what", what, "storyline, graph, text, entities, evolution or communities")
      ->check(CLI::IsMember({"storyline", "graph", "text", "entities", "evolution", "communities"}))
      ->capture_default_str();
  exp->add_option("--granularity", granularity, "paragraph or sentence")
      ->check(CLI::IsMember({"paragraph", "sentence"}))
      ->capture_default_str();
  exp->add_option("--level", level, "Co-occurrence level for --what graph")
      ->check(CLI::IsMember({"sentence", "paragraph"}))
      ->capture_default_str();
  exp->add_option("--entities", entity_list, "Comma-separated entity ids for the storyline");
  exp->add_option("--out", out_path, "Output file (default: stdout)");
  export_common.add_to(exp);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  CommonOptions serve_common;
  std::string host = "127.0.0.1", ui_dir;
  int port = 8080;
  serve->add_option("--port", port, "Port, 0 for any free port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--ui", ui_dir, "Directory with the built UI, served at /");
  serve_common.add_to(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) {
      const auto lexicon = lexicon_path.empty() ? comparative::KeywordLexicon::bundled()
                                                : comparative::KeywordLexicon::from_file(lexicon_path);
      const auto corpus = corpus_path.empty() ? comparative::bundled_corpus()
                                              : comparative::parse_corpus(resources::read_file(corpus_path));
      if (folds > 0) {
        const auto cv = comparative::cross_validate(corpus, lexicon, folds, seed, train_opts);
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << folds << "-fold accuracy " << cv.mean_accuracy << " \xc2\xb1 " << cv.std_accuracy << " (n=" << corpus.size()
             << ")";
        std::cout << line.str() << "\n";
      }
      const auto model = comparative::train(corpus, lexicon, train_opts);
      model.save(model_out);
      std::cout << "wrote " << model_out << " (" << model.features().size() << " features)\n";
    } else if (*analyze) {
      auto pipeline = analyze_common.pipeline();
      std::string raw;
      if (input == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        raw = buf.str();
      } else {
        raw = resources::read_file(input);
      }
      const auto record = pipeline.analyze_document(raw, text::input_format_from_string(format), {title, date});
      std::size_t comparative_count = 0;
      for (const auto& p : record.predictions) comparative_count += p.label == comparative::Label::comparative;
      std::cerr << record.document.sentence_count() << " sentences, " << comparative_count << " comparative, "
                << record.entity_table.entities.size() << " entities\n";
      std::cout << record.document.id << "\n";
    } else if (*exp) {
      auto pipeline = export_common.pipeline();
      const bool collection = what == "evolution" || what == "communities";
      if (!collection && doc_id.empty()) {
        std::cerr << "export --what " << what << " needs a doc_id\n";
        return kExitUsage;
      }
      nlohmann::json out;
      if (what == "storyline") {
        std::vector<std::string> ids;
        std::stringstream in(entity_list);
        for (std::string id; std::getline(in, id, ',');)
          if (!id.empty()) ids.push_back(id);
        out = storyline::to_json(
            pipeline.get_storyline(doc_id, storyline::granularity_from_string(granularity), ids));
      } else if (what == "graph") {
        out = pipeline.cooccurrence_view(doc_id, analytics::level_from_string(level));
      } else if (what == "text") {
        out = pipeline.text_view(doc_id);
      } else if (what == "entities") {
        out = pipeline.entity_ranking(doc_id);
      } else if (what == "evolution") {
        out = service::evolution_json(pipeline.get_collection_views());
      } else {
        out = service::communities_json(pipeline.get_collection_views());
      }
      write_output(out_path, out.dump(2));
    } else if (*serve) {
      auto pipeline = serve_common.pipeline();
      service::HttpServer server(pipeline, ui_dir);
      const int bound = server.bind(host, port);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://" << host << ":" << bound << "\n" << std::flush;
      server.listen();
      g_server = nullptr;
    }
  } catch (const StageError& e) {
    std::cerr << "error [" << to_string(e.code()) << ", stage " << e.stage() << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return kExitOk;
}
