"""Deterministic desk-scale fixture: ~1,200 synthetic issues, 3 projects.

The QTBUG-like project carries exactly 214 distinct component names and a
version vocabulary whose quirks drive the value-resolution tests: "7.0"
exists only as "7.0 (Next Major Release)", "build tools" only under
"Build tools: ...", and so on. Regenerating with the same seed yields a
byte-identical JSONL file; the copy under data/ is that output.
"""

from __future__ import annotations

import datetime as dt
import random
from importlib import resources
from pathlib import Path

from .sim.store import IssueStore, load_fixture

DESK_SEED = 7341
DESK_NOW = dt.datetime(2025, 7, 1, tzinfo=dt.timezone.utc)
DESK_FIXTURE_NAME = "desk_fixture.jsonl"

_PROJECT_SIZES = (("QTBUG", 700), ("QDS", 300), ("PYSIDE", 200))

# Component vocabulary per project. QTBUG's list is pinned to exactly 214
# names; the named entries below are load-bearing for anchor tests.
_QTBUG_COMPONENT_GROUPS: dict[str, tuple[str, ...]] = {
    "Core": (
        "QString and Unicode", "Containers and Algorithms", "URL Handling",
        "Date/Time", "Event loop", "Object model", "I/O", "Plugins",
        "Serialization", "Threads", "Regular Expressions", "State Machine",
        "Animation framework", "Memory Management", "Other",
    ),
    "GUI": (
        "Text handling", "Font handling", "Complex Input methods", "OpenGL",
        "Painting", "Window management", "Image formats", "Drag and Drop",
        "Clipboard", "High-DPI", "Styles", "Other",
    ),
    "Widgets": (
        "Itemviews", "Layouts", "Dialogs", "Mainwindow", "GraphicsView",
        "Style sheets", "Tree views", "Table views", "Other",
    ),
    "QML": ("Engine", "Compiler", "Tooling", "Debugger", "Profiler", "Language Server", "Other"),
    "Quick": ("Controls", "Layouts", "Shapes", "Text", "Timeline", "Other"),
    "Network": ("HTTP", "SSL/TLS", "Sockets", "DNS", "Proxies", "Other"),
    "Build tools": ("Other", "qmake", "moc", "uic", "rcc", "qdoc"),
    "Build system": ("Other", "qbs", "visual studio integration"),
    "Platform": (
        "Windows", "Linux/X11", "Wayland", "macOS", "Android", "iOS",
        "WebAssembly", "Embedded Linux", "FreeBSD", "QNX",
    ),
    "Multimedia": ("Audio", "Video", "Camera", "Playback", "Recording", "Other"),
    "WebEngine": ("Core", "Widgets", "Printing", "PDF", "Other"),
    "SQL": ("Drivers", "ODBC", "PostgreSQL", "SQLite", "MySQL", "Other"),
    "XML": ("DOM", "Streams", "Schema", "Other"),
    "Tools": ("Designer", "Linguist", "Assistant", "qdbus", "windeployqt", "macdeployqt", "Other"),
    "Documentation": ("API Docs", "Examples", "Snippets", "Other"),
    "Testing": ("QTest", "Autotests", "CI", "Coverage", "Other"),
    "Packaging": ("Installer", "Online Installer", "SDK", "Conan", "Other"),
    "Graphics": ("RHI", "Vulkan", "Metal", "Direct3D", "Shader Baker", "Scene Graph", "Other"),
    "Input": ("Touch", "Pen", "Gamepad", "Keyboard shortcuts", "Mouse", "Other"),
    "I18n": ("Translations", "Locales", "Text codecs", "Other"),
    "Printing": ("CUPS", "Print dialogs", "PDF output", "Other"),
    "Bluetooth": ("Classic", "Low Energy", "Other"),
    "Positioning": ("Satellite", "NMEA", "Other"),
    "Sensors": ("Accelerometer", "Gyroscope", "Other"),
    "Charts": ("Axis", "Series", "Legend", "Other"),
    "Data Visualization": ("Bars", "Surface", "Other"),
    "3D": ("Renderer", "Input handling", "Animation", "Other"),
    "SerialPort": ("Enumeration", "I/O", "Other"),
    "WebSockets": ("Client", "Server", "Other"),
    "Concurrency": ("Thread pools", "Futures", "Other"),
    "Accessibility": ("Screen readers", "Platform bridges", "Other"),
    "Installer": ("Framework", "Updater", "Other"),
    "Help": ("Engine", "Viewer", "Other"),
    "DBus": ("Bindings", "Daemon integration", "Other"),
    "Virtual Keyboard": ("Layouts", "Handwriting", "Other"),
    "Remote Objects": ("Registry", "Replicas", "Other"),
    "Wayland Compositor": ("Shell extensions", "Buffers", "Other"),
    "PDF": ("Rendering", "Forms", "Other"),
    "Lottie": ("Rendering", "Other"),
    "NFC": ("Tags", "Other"),
    "Active Qt": ("Servers", "Clients", "Other"),
    "Location": ("Maps", "Places", "Other"),
    "SCXML": ("State machines", "Other"),
    "CoAP": ("Client", "Other"),
    "MQTT": ("Client", "Other"),
    "OPC UA": ("Client", "Other"),
    "Speech": ("Text-to-speech", "Other"),
    "HttpServer": ("Routing", "Other"),
    "GRPC": ("Codegen", "Other"),
}

QTBUG_COMPONENTS: tuple[str, ...] = tuple(
    f"{group}: {name}"
    for group, names in _QTBUG_COMPONENT_GROUPS.items()
    for name in names
)

QDS_COMPONENTS = tuple(
    f"Design Studio: {name}"
    for name in (
        "Timeline", "States", "Property Editor", "Navigator", "Asset Library",
        "Material Editor", "Effect Composer", "Code View", "Live Preview",
        "3D View", "Annotations", "Connections", "Transitions", "Bindings",
        "Themes", "Importer", "Exporter", "Project Wizard", "Welcome Page",
        "Examples", "Documentation", "Installer", "Licensing", "Other",
    )
)

PYSIDE_COMPONENTS = tuple(
    f"PySide: {name}"
    for name in (
        "Shiboken", "Type System", "Signals/Slots", "QML Support",
        "Packaging", "Wheels", "Documentation", "Examples", "Designer Plugin",
        "Asyncio", "Numpy interop", "Stubs", "Deployment", "Tooling", "Other",
    )
)

_COMPONENTS = {
    "QTBUG": QTBUG_COMPONENTS,
    "QDS": QDS_COMPONENTS,
    "PYSIDE": PYSIDE_COMPONENTS,
}

# Version pools. Deliberate absences: no project has a bare "7.0" (only
# "7.0 (Next Major Release)") and nothing else contains the substring
# "7.0", so resolver and zero-result behaviours stay unambiguous.
QTBUG_FIX_VERSIONS = (
    "6.4.0", "6.4.1", "6.4.2", "6.4.3",
    "6.5", "6.5.0", "6.5.0 Beta1", "6.5.0 Beta2", "6.5.0 RC1",
    "6.5.1", "6.5.2", "6.5.3",
    "6.6", "6.6.0", "6.6.0 Beta1", "6.6.0 Beta2", "6.6.0 Beta3",
    "6.6.1", "6.6.2",
    "6.7", "6.7 Beta1", "6.7 RC1", "6.8", "6.8 LTS",
    "7.0 (Next Major Release)",
)
QTBUG_AFFECTED_VERSIONS = (
    "5.15.2", "5.15.8", "5.15.10",
    "6.2.0", "6.2.4", "6.3.0", "6.3.0 Beta2", "6.3.1", "6.3.2",
    "6.4.0", "6.4.0 Beta1", "6.4.1", "6.4.2",
    "6.5", "6.5.0", "6.5.0 Beta1", "6.5.1",
    "6.6.0", "6.6.0 Beta3",
)
QDS_FIX_VERSIONS = (
    "QDS 1.5", "QDS 1.6", "QDS 1.6 Beta", "QDS 2.0", "QDS 2.1",
    "QDS 3.0", "QDS 3.0 Beta1", "QDS 3.1",
)
QDS_AFFECTED_VERSIONS = ("QDS 1.4", "QDS 1.5", "QDS 1.6", "QDS 2.0", "QDS 2.1", "QDS 3.0")
PYSIDE_FIX_VERSIONS = ("5.15.2", "6.4.0", "6.5.0", "6.5.1", "6.6.0", "6.6.1", "6.8.0")
PYSIDE_AFFECTED_VERSIONS = ("5.15.2", "6.2.4", "6.4.0", "6.5.0", "6.6.0")

_FIX_VERSIONS = {
    "QTBUG": QTBUG_FIX_VERSIONS,
    "QDS": QDS_FIX_VERSIONS,
    "PYSIDE": PYSIDE_FIX_VERSIONS,
}
_AFFECTED_VERSIONS = {
    "QTBUG": QTBUG_AFFECTED_VERSIONS,
    "QDS": QDS_AFFECTED_VERSIONS,
    "PYSIDE": PYSIDE_AFFECTED_VERSIONS,
}

LABELS = (
    "tech-debt", "needs-triage", "flaky-test", "regression", "performance",
    "documentation", "easy-fix", "security", "accessibility", "ci",
    "build-system", "android", "ios", "wayland", "macos", "windows",
    "i18n", "qml", "networking", "upstream", "patch-available",
    "reproducible", "needs-info", "triaged", "stale", "good-first-issue",
    "api-change", "memory", "threading", "unicode-support",
)

PLATFORMS = ("Windows", "Linux", "macOS", "Android", "iOS", "WebAssembly")

USERS = (
    "alice.chen", "bob.mueller", "carla.jones", "deepak.rao", "elena.petrova",
    "frank.osei", "grace.kim", "hiro.tanaka", "ines.fernandez", "jan.kowalski",
    "kate.obrien", "liam.smith", "maria.garcia", "nikolai.orlov",
    "priya.sharma", "quentin.roy", "sofia.rossi", "tomas.novak",
)

ISSUE_TYPE_WEIGHTS = (
    ("Bug", 30), ("Task", 16), ("User Story", 10), ("Epic", 6), ("Sub-task", 8),
    ("Suggestion", 6), ("Improvement", 6), ("New Feature", 4), ("Documentation", 3),
    ("Technical task", 3), ("Change Request", 2), ("Pre-Release Bug", 2),
    ("Test", 2), ("Vulnerability", 1), ("Initiative", 1),
)

PRIORITY_POOL = (
    "P0: Blocker", "P1: Critical", "P2: Important", "P3: Somewhat important",
    "P4: Low", "P5: Not important", "Not Evaluated",
)
RESOLUTION_POOL = (
    "Fixed", "Duplicate", "Invalid", "Won't Do", "Done", "Incomplete",
    "Cannot Reproduce", "Out of scope", "Works as Intended",
)

# Curated keyword vocabulary for text clauses; summaries and descriptions
# are built around these so text-search queries hit real issues.
TEXT_KEYWORDS = (
    "crash", "error", "regression", "unicode", "build", "memory", "slow",
    "freeze", "leak", "timeout",
)

_SUMMARY_TEMPLATES = (
    "Crash when {area} is resized on {platform}",
    "Unicode text rendering error in {area}",
    "Build failure in {area} with {tool} on {platform}",
    "Memory leak in {area} after repeated updates",
    "Regression: {area} ignores style overrides",
    "Error dialog shown twice when saving {thing}",
    "Slow startup with a large {thing}",
    "Freeze while loading {thing} from disk",
    "{area} crash on application exit",
    "Timeout connecting to {service} behind proxy",
    "Incorrect layout of {thing} after font change",
    "{area} leaks file handles under load",
    "Flaky autotest in {area} on {platform}",
    "Crash in {area} when {thing} is empty",
    "Build warning spam from {tool} in {area}",
    "Error restoring {thing} state after restart",
    "High memory usage rendering {thing}",
    "Regression in {area} scrolling performance, very slow",
    "Unicode normalization error when comparing {thing} names",
    "Freeze and timeout in {area} during shutdown",
)

_DESCRIPTION_TEMPLATES = (
    "Steps to reproduce: open {thing}, interact with {area}, observe the {kw}. "
    "Happens on {platform} with a debug build.",
    "After the latest update the {area} module shows a {kw} under load. "
    "Reverting the change avoids it.",
    "The attached log contains the {kw} backtrace. {area} seems to mishandle "
    "{thing} when the locale is non-ASCII.",
    "Customer reports a {kw} in {area}. No workaround known; {thing} must be "
    "recreated after every restart.",
    "Automated CI caught a {kw} while exercising {area} on {platform}. "
    "See the linked test run for details.",
    "Profiling shows the {kw} originates in {area}; {thing} allocations grow "
    "without bound.",
)

_AREAS = (
    "the item view", "the text editor", "the scene graph", "the network stack",
    "the style engine", "the QML compiler", "the font cache", "the event loop",
    "the installer", "the shader pipeline", "the translation loader",
    "the dock widget", "the table model", "the image decoder",
)
_THINGS = (
    "project file", "layout", "stylesheet", "model", "settings dialog",
    "toolbar", "document", "scene", "configuration", "session", "palette",
    "resource bundle", "theme", "workspace",
)
_TOOLS = ("CMake", "qmake", "moc", "Ninja", "clang", "MSVC", "gcc")
_SERVICES = ("the license server", "the update mirror", "the crash reporter", "the telemetry endpoint")

_EPOCH = dt.datetime(2023, 1, 1, tzinfo=dt.timezone.utc)
_LATEST = dt.datetime(2025, 6, 30, tzinfo=dt.timezone.utc)


def make_desk_records(seed: int = DESK_SEED) -> list[dict]:
    """Generate the desk fixture as JSONL-ready record dicts."""
    rng = random.Random(seed)
    types, type_weights = zip(*ISSUE_TYPE_WEIGHTS)
    records: list[dict] = []
    for project, count in _PROJECT_SIZES:
        components = _COMPONENTS[project]
        fix_pool = _FIX_VERSIONS[project]
        affected_pool = _AFFECTED_VERSIONS[project]
        for i in range(count):
            record: dict = {"key": f"{project}-{i + 1}", "project": project}
            record["issuetype"] = rng.choices(types, weights=type_weights, k=1)[0]
            if rng.random() > 0.10:
                record["priority"] = rng.choice(PRIORITY_POOL)
            if rng.random() > 0.40:
                record["resolution"] = rng.choice(RESOLUTION_POOL)
            if rng.random() > 0.30:
                record["assignee"] = rng.choice(USERS)

            # The first len(pool) issues of a project each pin one pool value,
            # guaranteeing every vocabulary entry appears in the store.
            record["components"] = _pick_set(rng, components, i, p_empty=0.12, max_extra=2)
            record["labels"] = _pick_set(rng, LABELS, i, p_empty=0.35, max_extra=2)
            record["fixVersions"] = _pick_set(rng, fix_pool, i, p_empty=0.25, max_extra=1)
            record["affectedVersions"] = _pick_set(rng, affected_pool, i, p_empty=0.30, max_extra=1)
            record["platforms"] = _pick_set(rng, PLATFORMS, i, p_empty=0.40, max_extra=1, pin=False)

            record["summary"] = _fill(rng, rng.choice(_SUMMARY_TEMPLATES))
            record["description"] = _fill(rng, rng.choice(_DESCRIPTION_TEMPLATES))

            created = _EPOCH + dt.timedelta(seconds=rng.randrange(0, int((_LATEST - _EPOCH).total_seconds())))
            updated = min(created + dt.timedelta(seconds=rng.randrange(0, 400 * 86400)), _LATEST)
            record["created"] = _ts(created)
            record["updated"] = _ts(updated)
            if "resolution" in record:
                resolved = created + (updated - created) * rng.random()
                record["resolved"] = _ts(resolved)

            records.append({k: v for k, v in record.items() if v not in ([], None)})
    return records


def _pick_set(
    rng: random.Random,
    pool: tuple[str, ...],
    index: int,
    *,
    p_empty: float,
    max_extra: int,
    pin: bool = True,
) -> list[str]:
    chosen: set[str] = set()
    if pin and index < len(pool):
        chosen.add(pool[index])
    elif rng.random() < p_empty:
        return []
    else:
        chosen.add(rng.choice(pool))
    for _ in range(rng.randint(0, max_extra)):
        chosen.add(rng.choice(pool))
    return sorted(chosen)


def _fill(rng: random.Random, template: str) -> str:
    return template.format(
        area=rng.choice(_AREAS),
        thing=rng.choice(_THINGS),
        tool=rng.choice(_TOOLS),
        platform=rng.choice(PLATFORMS),
        service=rng.choice(_SERVICES),
        kw=rng.choice(TEXT_KEYWORDS),
    )


def _ts(value: dt.datetime) -> str:
    return value.strftime("%Y-%m-%dT%H:%M:%SZ")


def write_desk_fixture(path: str | Path, seed: int = DESK_SEED) -> int:
    """Write the generated fixture as JSONL; returns the record count."""
    import json

    records = make_desk_records(seed)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return len(records)


def desk_fixture_text() -> str:
    """Contents of the bundled desk fixture JSONL."""
    return (
        resources.files("jqlagent")
        .joinpath("data")
        .joinpath(DESK_FIXTURE_NAME)
        .read_text("utf-8")
    )


def load_desk_store() -> IssueStore:
    import io

    return load_fixture(io.StringIO(desk_fixture_text()))
