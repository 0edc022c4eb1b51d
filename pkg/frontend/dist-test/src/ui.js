// DOM wiring. The page is a single controller owning one ComposerState;
// every mutation goes through the pure transitions in state.ts, then a
// compose request refreshes the rendered glyph, constraints, and concept.
import { ServiceError } from "./api.js";
import { decodeState, encodeState } from "./permalink.js";
import { applicableRules, applyRule, composeSpec, removeRule, selectRadical, toggleAbbreviated, toggleRegion, } from "./state.js";
import { EMPTY_STATE } from "./types.js";
const RENDER_SIZE = 240;
const MIN_TARGET_PX = 24;
export class Composer {
    client;
    root;
    state = EMPTY_STATE;
    detail = null;
    radicals = [];
    lastResponse = null;
    constructor(client, root) {
        this.client = client;
        this.root = root;
    }
    async start() {
        this.root.innerHTML = `
      <div class="banner" id="banner" hidden></div>
      <div class="columns">
        <nav class="sidebar"><h2>Radicals</h2><ul id="radical-list"></ul></nav>
        <main class="stage">
          <div class="glyph-frame">
            <div id="glyph" class="glyph"></div>
            <div id="overlays" class="overlays"></div>
          </div>
          <div class="readout">
            <div id="concept" class="concept">select a radical</div>
            <div id="irregular" class="irregular" hidden>irregular form</div>
            <ul id="constraints" class="constraints"></ul>
          </div>
          <section class="controls">
            <h2>Rules</h2>
            <div id="rules" class="rules"></div>
            <label id="abbr-box" hidden>
              <input type="checkbox" id="abbr"> abbreviated
            </label>
            <div class="permalink">permalink: <code id="permalink"></code></div>
          </section>
        </main>
      </div>`;
        try {
            this.radicals = await this.client.radicals();
        }
        catch (err) {
            this.showError(err);
            return;
        }
        this.renderRadicalList();
        const fromHash = decodeState(window.location.hash);
        if (fromHash.radical !== null) {
            await this.restore(fromHash);
        }
    }
    byId(id) {
        return this.root.querySelector(`#${id}`);
    }
    renderRadicalList() {
        const list = this.byId("radical-list");
        list.innerHTML = "";
        for (const radical of this.radicals) {
            const item = document.createElement("li");
            const button = document.createElement("button");
            button.textContent = radical.name;
            button.dataset.radical = radical.id;
            button.addEventListener("click", () => {
                void this.onSelect(radical.id);
            });
            item.appendChild(button);
            list.appendChild(item);
        }
    }
    async onSelect(id) {
        await this.restore(selectRadical(id));
    }
    /** Install a whole state (radical selection or decoded permalink). */
    async restore(state) {
        if (state.radical === null) {
            return;
        }
        try {
            this.detail = await this.client.radicalDetail(state.radical);
        }
        catch (err) {
            this.showError(err);
            return;
        }
        this.state = state;
        await this.refresh();
    }
    async onToggleRegion(region) {
        if (!this.detail) {
            return;
        }
        this.state = toggleRegion(this.state, this.detail, region);
        await this.refresh();
    }
    async onRuleClick(ruleId) {
        if (!this.detail) {
            return;
        }
        this.state = this.state.rules.includes(ruleId)
            ? removeRule(this.state, this.detail, ruleId)
            : applyRule(this.state, this.detail, ruleId);
        await this.refresh();
    }
    async onToggleAbbreviated() {
        if (!this.detail) {
            return;
        }
        this.state = toggleAbbreviated(this.state, this.detail);
        await this.refresh();
    }
    /** Compose the current state and repaint; stale responses are dropped. */
    async refresh() {
        this.hideError();
        window.location.hash = encodeState(this.state);
        this.byId("permalink").textContent = `#${encodeState(this.state)}`;
        try {
            const outcome = await this.client.compose({
                ...composeSpec(this.state),
                size: RENDER_SIZE,
            });
            if (outcome.stale || !outcome.response) {
                return;
            }
            this.lastResponse = outcome.response;
            this.paint(outcome.response);
        }
        catch (err) {
            this.showError(err); // banner only: the state is preserved
        }
    }
    paint(response) {
        this.byId("glyph").innerHTML = response.svg;
        this.byId("concept").textContent = response.concept
            ? response.concept.name
            : "unbound";
        this.byId("irregular").hidden = !response.irregular;
        const constraints = this.byId("constraints");
        constraints.innerHTML = "";
        for (const [constraint, sign] of response.constraints) {
            const item = document.createElement("li");
            item.textContent = `${constraint}${sign}`;
            constraints.appendChild(item);
        }
        this.renderOverlays();
        this.renderRules();
    }
    /**
     * Region hit-targets: each schema region becomes a button positioned over
     * the rendered glyph at its anchor, sized by its extent, never smaller
     * than 24px in either direction.
     */
    renderOverlays() {
        const overlays = this.byId("overlays");
        overlays.innerHTML = "";
        if (!this.detail) {
            return;
        }
        for (const region of this.detail.region_schema) {
            const button = document.createElement("button");
            button.className = "region-target";
            button.title = `${region.name}: ${region.constraint_name}`;
            button.dataset.region = region.name;
            const mark = this.state.assignment[region.name];
            const markInfo = this.detail.marks.find((m) => m.id === mark);
            button.dataset.mark = markInfo ? markInfo.polarity : "absent";
            const w = Math.max(region.extent[0] * RENDER_SIZE, MIN_TARGET_PX);
            const h = Math.max(region.extent[1] * RENDER_SIZE, MIN_TARGET_PX);
            button.style.left = `${region.anchor[0] * RENDER_SIZE - w / 2}px`;
            button.style.top = `${region.anchor[1] * RENDER_SIZE - h / 2}px`;
            button.style.width = `${w}px`;
            button.style.height = `${h}px`;
            button.addEventListener("click", () => {
                void this.onToggleRegion(region.name);
            });
            overlays.appendChild(button);
        }
    }
    renderRules() {
        const rules = this.byId("rules");
        rules.innerHTML = "";
        if (!this.detail) {
            return;
        }
        const ready = new Set(applicableRules(this.state, this.detail).map((r) => r.id));
        for (const rule of this.detail.rules) {
            const button = document.createElement("button");
            const applied = this.state.rules.includes(rule.id);
            button.textContent = rule.name;
            button.dataset.rule = rule.id;
            button.classList.toggle("applied", applied);
            button.disabled = !applied && !ready.has(rule.id);
            button.addEventListener("click", () => {
                void this.onRuleClick(rule.id);
            });
            rules.appendChild(button);
        }
        const box = this.byId("abbr-box");
        box.hidden = this.detail.limit_file === null;
        const checkbox = this.byId("abbr");
        checkbox.checked = this.state.abbreviated;
        checkbox.onchange = () => {
            void this.onToggleAbbreviated();
        };
    }
    showError(err) {
        const banner = this.byId("banner");
        banner.hidden = false;
        banner.textContent =
            err instanceof ServiceError
                ? err.message
                : "service unreachable; showing the last good state";
    }
    hideError() {
        this.byId("banner").hidden = true;
    }
}
