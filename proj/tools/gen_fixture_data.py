#!/usr/bin/env python3
"""Embed the scenarios/*.fis files into a C++ translation unit."""

import argparse
import pathlib


def cpp_literal(text: str) -> str:
    out = []
    for line in text.split("\n"):
        escaped = line.replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'    "{escaped}\\n"')
    # split("\n") leaves a trailing empty chunk when the file ends in \n
    if out and out[-1] == '    "\\n"':
        out.pop()
    return "\n".join(out)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--scenario-dir", required=True)
    parser.add_argument("--output", required=True)
    args = parser.parse_args()

    scenario_dir = pathlib.Path(args.scenario_dir)
    fixtures = sorted(scenario_dir.glob("*.fis"))
    if not fixtures:
        raise SystemExit(f"no .fis files under {scenario_dir}")

    chunks = [
        "// Generated by tools/gen_fixture_data.py; do not edit.",
        "#include <cstddef>",
        "",
        "namespace fisheco::detail {",
        "",
        "struct FixtureData {",
        "  const char* name;",
        "  const char* text;",
        "};",
        "",
        "extern const FixtureData kFixtures[];",
        "extern const std::size_t kFixtureCount;",
        "",
        "const FixtureData kFixtures[] = {",
    ]
    for path in fixtures:
        text = path.read_text(encoding="utf-8")
        chunks.append(f'  {{"{path.stem}",')
        chunks.append(cpp_literal(text))
        chunks.append("  },")
    chunks += [
        "};",
        "",
        "const std::size_t kFixtureCount = sizeof(kFixtures) / sizeof(kFixtures[0]);",
        "",
        "}  // namespace fisheco::detail",
        "",
    ]

    output = pathlib.Path(args.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text("\n".join(chunks), encoding="utf-8")


if __name__ == "__main__":
    main()
