#include <exception>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace lgcn::cli;
  CLI::App app{"Lorentzian graph convolutional networks"};
  app.require_subcommand(1);
  TrainArgs train;
  AnalyzeArgs analyze;
  GenArgs gen;
  add_train(app, train);
  add_analyze(app, analyze);
  add_gen(app, gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (app.got_subcommand("train")) return run_train(train);
    if (app.got_subcommand("analyze")) return run_analyze(analyze);
    return run_gen(gen);
  } catch (const std::exception& e) {
    return fail(kConfigError, e.what());
  }
}
