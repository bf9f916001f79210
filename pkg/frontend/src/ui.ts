// Browser wiring. Fetches payloads, hands them to the pure modules, and
// puts the result on screen. Analytics never happen here: every number
// shown is lifted from a server payload field.

import { ApiClient, StaleVersionError } from "./api.js";
import {
  defaultViewState,
  renderedParams,
  restoreViewState,
  serializeViewState,
  VersionTracker,
  type ViewState,
} from "./state.js";
import {
  chartGeometry,
  isEmptySeries,
  peakYear,
  selectRange,
  tableSlice,
  topReferencesForYear,
} from "./spectrum.js";
import {
  afterDecision,
  buildQueue,
  currentCluster,
  keyToAction,
  onConflict,
  suggestedCanonical,
  type QueueState,
} from "./review.js";
import { layoutGraph, tooLarge, MAX_RENDER_NODES } from "./network.js";
import type { CRRow, GraphPayload, SpectrumPoint } from "./types.js";

const STATE_KEY = "refspect-explorer-view";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS("http://www.w3.org/2000/svg", tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export class Explorer {
  private view: ViewState;
  private readonly versions = new VersionTracker();
  private queue: QueueState = { queue: [], cursor: 0, version: 0, needsRefresh: false };
  private pane: "spectrum" | "review" | "network" | "query" = "spectrum";
  private paneVersion = new Map<string, number>();

  private readonly badge = el("span", { class: "badge hidden" }, "stale, refresh");
  private readonly header = el("div", { class: "header-stats" });
  private readonly body = el("div", { class: "pane" });
  private readonly status = el("div", { class: "status" });

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    const stored = window.localStorage.getItem(STATE_KEY);
    this.view = stored === null ? defaultViewState() : restoreViewState(stored);
  }

  async boot(): Promise<void> {
    const bar = el("div", { class: "tabs" });
    for (const name of ["spectrum", "review", "network", "query"] as const) {
      const button = el("button", {}, name);
      button.addEventListener("click", () => {
        this.pane = name;
        void this.render();
      });
      bar.appendChild(button);
    }
    bar.appendChild(this.badge);
    this.root.appendChild(bar);
    this.root.appendChild(this.header);
    this.root.appendChild(this.body);
    this.root.appendChild(this.status);
    document.addEventListener("keydown", (ev) => this.onKey(ev));
    await this.refreshHeader();
    await this.render();
  }

  private persist(): void {
    window.localStorage.setItem(STATE_KEY, serializeViewState(this.view));
  }

  private observe(version: number): void {
    this.versions.observe(version);
    const rendered = this.paneVersion.get(this.pane);
    const stale = rendered !== undefined && this.versions.isStale(rendered);
    this.badge.classList.toggle("hidden", !stale);
  }

  private fail(err: unknown): void {
    const message = err instanceof Error ? err.message : String(err);
    clear(this.status);
    this.status.appendChild(el("span", { class: "error" }, message));
    const retry = el("button", {}, "retry");
    retry.addEventListener("click", () => void this.render());
    this.status.appendChild(retry);
  }

  private async refreshHeader(): Promise<void> {
    const meta = await this.api.meta();
    this.observe(meta.version);
    clear(this.header);
    this.header.appendChild(el("span", {}, `${meta.records} records`));
    this.header.appendChild(el("span", {}, `${meta.reference_occurrences} cited refs`));
    this.header.appendChild(el("span", { id: "variant-count" }, `${meta.merged_variants} variants`));
    this.header.appendChild(el("span", {}, `${meta.merge_count} merges`));
    this.header.appendChild(el("span", { class: "kernel" }, `kernel: ${meta.kernel}`));
  }

  private async render(): Promise<void> {
    clear(this.status);
    try {
      if (this.pane === "spectrum") await this.renderSpectrum();
      else if (this.pane === "review") await this.renderReview();
      else if (this.pane === "network") await this.renderNetwork();
      else this.renderQuery();
      this.persist();
    } catch (err) {
      this.fail(err);
    }
  }

  private async renderSpectrum(): Promise<void> {
    const params = renderedParams(this.view);
    const payload = await this.api.spectrum(params.spectrum);
    const table = await this.api.crtable(params.crtable);
    this.observe(payload.version);
    this.paneVersion.set("spectrum", payload.version);
    clear(this.body);

    const points = selectRange(payload.points, this.view.spectrum_range);
    if (isEmptySeries(points)) {
      this.body.appendChild(el("p", { class: "empty" }, "no cited references in this range"));
      return;
    }
    const width = 900;
    const height = 320;
    const geom = chartGeometry(points, width, height);
    const peak = peakYear(points);
    const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}`, class: "spectrum" });

    const detail = el("div", { class: "detail" });
    for (const [i, bar] of geom.bars.entries()) {
      const point = points[i] as SpectrumPoint;
      const rect = svgEl("rect", {
        x: bar.x.toFixed(2),
        y: (height - bar.height).toFixed(2),
        width: bar.width.toFixed(2),
        height: bar.height.toFixed(2),
        fill: point.rpy === peak ? "#d6553a" : "#7a9bc4",
      });
      rect.addEventListener("mouseenter", () => {
        this.showTopRefs(detail, table.rows, point);
      });
      rect.addEventListener("click", () => {
        this.showSlice(detail, table.rows, point.rpy);
      });
      svg.appendChild(rect);
    }
    const path = geom.line
      .map((p, i) => `${i === 0 ? "M" : "L"}${p.x.toFixed(2)},${p.y.toFixed(2)}`)
      .join(" ");
    svg.appendChild(svgEl("path", { d: path, fill: "none", stroke: "#333", "stroke-width": "1.5" }));
    svg.appendChild(
      svgEl("line", {
        x1: "0",
        x2: String(width),
        y1: geom.zeroY.toFixed(2),
        y2: geom.zeroY.toFixed(2),
        stroke: "#999",
        "stroke-dasharray": "4 3",
      }),
    );
    this.body.appendChild(svg);
    if (peak !== null) {
      this.body.appendChild(el("p", {}, `peak deviation at ${peak}`));
    }
    this.body.appendChild(this.rangeControls(payload.points));
    this.body.appendChild(detail);
  }

  private rangeControls(points: SpectrumPoint[]): HTMLElement {
    const box = el("div", { class: "controls" });
    const lo = el("input", { type: "number", value: String(this.view.spectrum_range?.[0] ?? points[0]?.rpy ?? 1900) });
    const hi = el("input", {
      type: "number",
      value: String(this.view.spectrum_range?.[1] ?? points[points.length - 1]?.rpy ?? 2020),
    });
    const apply = el("button", {}, "apply range");
    apply.addEventListener("click", () => {
      this.view.spectrum_range = [Number(lo.value), Number(hi.value)];
      void this.render();
    });
    const reset = el("button", {}, "reset");
    reset.addEventListener("click", () => {
      this.view.spectrum_range = null;
      void this.render();
    });
    box.append("range:", lo, "to", hi, apply, reset);
    return box;
  }

  private showTopRefs(target: HTMLElement, rows: CRRow[], point: SpectrumPoint): void {
    clear(target);
    target.appendChild(
      el("p", {}, `${point.rpy}: total ${point.n_cr_total}, median ${point.median5}, deviation ${point.deviation}`),
    );
    const list = el("ol");
    for (const row of topReferencesForYear(rows, point.rpy, 5)) {
      list.appendChild(el("li", {}, `${row.cr} (${row.n_cr})`));
    }
    target.appendChild(list);
  }

  private showSlice(target: HTMLElement, rows: CRRow[], rpy: number): void {
    clear(target);
    const slice = tableSlice(rows, rpy);
    const table = el("table");
    const head = el("tr");
    for (const h of ["CR", "N_CR", "selected", "DOI"]) head.appendChild(el("th", {}, h));
    table.appendChild(head);
    for (const row of slice) {
      const tr = el("tr");
      tr.appendChild(el("td", {}, row.cr));
      tr.appendChild(el("td", {}, String(row.n_cr)));
      tr.appendChild(el("td", {}, row.selected ? "yes" : ""));
      tr.appendChild(el("td", {}, row.doi ?? ""));
      table.appendChild(tr);
    }
    target.appendChild(el("p", {}, `${slice.length} cited references in ${rpy}`));
    target.appendChild(table);
  }

  private async renderReview(): Promise<void> {
    const params = renderedParams(this.view);
    const payload = await this.api.clusters(params.clusters);
    this.observe(payload.version);
    this.paneVersion.set("review", payload.version);
    this.queue = buildQueue(payload.clusters, payload.version);
    this.queue = { ...this.queue, cursor: Math.min(this.view.queue_cursor, Math.max(this.queue.queue.length - 1, 0)) };
    this.drawQueue();
  }

  private drawQueue(): void {
    clear(this.body);
    if (this.queue.needsRefresh) {
      const note = el("p", { class: "conflict" }, "another change landed on the server; refresh the queue");
      const refresh = el("button", {}, "refresh queue");
      refresh.addEventListener("click", () => void this.render());
      this.body.append(note, refresh);
      return;
    }
    const cluster = currentCluster(this.queue);
    if (cluster === null) {
      this.body.appendChild(el("p", { class: "empty" }, "queue is empty"));
      return;
    }
    this.body.appendChild(
      el("p", {}, `cluster ${this.queue.cursor + 1} of ${this.queue.queue.length}, size ${cluster.size}`),
    );
    const list = el("ul");
    cluster.members.forEach((m, i) => {
      const marker = i === cluster.suggested_canonical ? " (suggested canonical)" : "";
      list.appendChild(el("li", {}, `${m.raw} x${m.count}${marker}`));
    });
    this.body.appendChild(list);
    this.body.appendChild(el("p", { class: "hint" }, "a accept, r reject, e edit canonical, j/k move"));
  }

  private onKey(ev: KeyboardEvent): void {
    if (this.pane !== "review") return;
    if (ev.target instanceof HTMLInputElement || ev.target instanceof HTMLTextAreaElement) return;
    const action = keyToAction(ev.key);
    if (action === null) return;
    ev.preventDefault();
    if (action.kind === "next") {
      this.queue = { ...this.queue, cursor: Math.min(this.queue.cursor + 1, this.queue.queue.length - 1) };
      this.view.queue_cursor = this.queue.cursor;
      this.drawQueue();
      return;
    }
    if (action.kind === "prev") {
      this.queue = { ...this.queue, cursor: Math.max(this.queue.cursor - 1, 0) };
      this.view.queue_cursor = this.queue.cursor;
      this.drawQueue();
      return;
    }
    const cluster = currentCluster(this.queue);
    if (cluster === null) return;
    let canonical: string | undefined;
    if (action.decision === "edit") {
      const answer = window.prompt("canonical form:", suggestedCanonical(cluster));
      if (answer === null || answer === "") return;
      canonical = answer;
    }
    void this.api
      .decide(cluster.cluster_id, action.decision, this.queue.version, canonical)
      .then(async (res) => {
        this.queue = afterDecision(this.queue, cluster.cluster_id, res.version);
        this.observe(res.version);
        await this.refreshHeader();
        this.drawQueue();
      })
      .catch((err) => {
        if (err instanceof StaleVersionError) {
          this.queue = onConflict(this.queue);
          this.drawQueue();
        } else {
          this.fail(err);
        }
      });
  }

  private async renderNetwork(): Promise<void> {
    const params = renderedParams(this.view);
    const payload: GraphPayload =
      this.view.graph.mode === "keywords"
        ? await this.api.keywordGraph(params.keyword_graph)
        : await this.api.countryGraph(params.country_graph);
    this.observe(payload.version);
    this.paneVersion.set("network", payload.version);
    clear(this.body);
    this.body.appendChild(this.networkControls());
    this.body.appendChild(el("p", {}, `${payload.items.length} nodes, ${payload.links.length} links`));

    if (tooLarge(payload)) {
      this.body.appendChild(
        el(
          "p",
          { class: "conflict" },
          `${payload.items.length} nodes exceeds the ${MAX_RENDER_NODES} render limit; raise the threshold`,
        ),
      );
      return;
    }
    const layout = layoutGraph(payload, { colorBy: this.view.graph.color_by });
    const svg = svgEl("svg", { viewBox: "0 0 900 600", class: "network" });
    for (const edge of layout.edges) {
      const a = layout.nodes[edge.from];
      const b = layout.nodes[edge.to];
      if (!a || !b) continue;
      svg.appendChild(
        svgEl("line", {
          x1: a.x.toFixed(1),
          y1: a.y.toFixed(1),
          x2: b.x.toFixed(1),
          y2: b.y.toFixed(1),
          stroke: "#bbb",
          "stroke-width": edge.width.toFixed(2),
        }),
      );
    }
    for (const node of layout.nodes) {
      const circle = svgEl("circle", {
        cx: node.x.toFixed(1),
        cy: node.y.toFixed(1),
        r: node.r.toFixed(1),
        fill: node.color,
      });
      const title = svgEl("title");
      title.textContent = `${node.label} (${node.weight})`;
      circle.appendChild(title);
      svg.appendChild(circle);
    }
    this.body.appendChild(svg);
  }

  private networkControls(): HTMLElement {
    const box = el("div", { class: "controls" });
    const mode = el("select");
    for (const m of ["keywords", "countries"]) {
      const opt = el("option", { value: m }, m);
      if (m === this.view.graph.mode) opt.setAttribute("selected", "selected");
      mode.appendChild(opt);
    }
    mode.addEventListener("change", () => {
      this.view.graph.mode = mode.value as "keywords" | "countries";
      void this.render();
    });

    const isKeywords = this.view.graph.mode === "keywords";
    const slider = el("input", {
      type: "range",
      min: "1",
      max: "25",
      value: String(isKeywords ? this.view.graph.min_occ : this.view.graph.min_pubs),
      id: "threshold-slider",
    });
    const label = el("span", {}, this.thresholdLabel());
    slider.addEventListener("change", () => {
      if (this.view.graph.mode === "keywords") this.view.graph.min_occ = Number(slider.value);
      else this.view.graph.min_pubs = Number(slider.value);
      label.textContent = this.thresholdLabel();
      void this.render();
    });

    const colorBy = el("select");
    for (const c of ["cluster", "score"]) {
      const opt = el("option", { value: c }, c === "score" ? "mean year" : c);
      if (c === this.view.graph.color_by) opt.setAttribute("selected", "selected");
      colorBy.appendChild(opt);
    }
    colorBy.addEventListener("change", () => {
      this.view.graph.color_by = colorBy.value as "cluster" | "score";
      void this.render();
    });

    box.append(mode, label, slider, "color by:", colorBy);
    return box;
  }

  private thresholdLabel(): string {
    return this.view.graph.mode === "keywords"
      ? `min occurrences: ${this.view.graph.min_occ}`
      : `min papers: ${this.view.graph.min_pubs}`;
  }

  private renderQuery(): void {
    clear(this.body);
    const textarea = el("textarea", { rows: "6", cols: "80", placeholder: "#hot := heat AND mortality" });
    const run = el("button", {}, "run script");
    const out = el("div", { class: "detail" });
    run.addEventListener("click", () => {
      void this.api
        .runScript(textarea.value, this.versions.latest)
        .then(async (payload) => {
          this.observe(payload.version);
          this.paneVersion.set("query", payload.version);
          clear(out);
          const table = el("table");
          const head = el("tr");
          for (const h of ["set", "count", "query"]) head.appendChild(el("th", {}, h));
          table.appendChild(head);
          for (const s of payload.sets) {
            const tr = el("tr");
            tr.appendChild(el("td", {}, s.name));
            tr.appendChild(el("td", {}, String(s.count)));
            tr.appendChild(el("td", {}, s.query));
            table.appendChild(tr);
          }
          out.appendChild(table);
          await this.refreshHeader();
        })
        .catch((err) => {
          if (err instanceof StaleVersionError) {
            clear(out);
            out.appendChild(el("p", { class: "conflict" }, "server moved on; rerun against the fresh version"));
          } else {
            clear(out);
            out.appendChild(el("p", { class: "error" }, err instanceof Error ? err.message : String(err)));
          }
        });
    });
    this.body.append(textarea, run, out);
  }
}

export function mount(root: HTMLElement, baseUrl: string): Explorer {
  const explorer = new Explorer(root, new ApiClient(baseUrl));
  void explorer.boot();
  return explorer;
}
