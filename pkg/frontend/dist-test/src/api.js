// Typed client for the registry service. Compose requests supersede each
// other: at most one response is ever delivered per burst of interactions,
// and it is always the response to the newest request.
export class ServiceError extends Error {
    status;
    constructor(message, status) {
        super(message);
        this.status = status;
    }
}
export class RegistryClient {
    baseUrl;
    fetchImpl;
    composeSeq = 0;
    constructor(baseUrl, fetchImpl = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchImpl = fetchImpl;
    }
    async getJson(path) {
        const response = await this.fetchImpl(`${this.baseUrl}${path}`);
        if (!response.ok) {
            throw new ServiceError(await describeError(response), response.status);
        }
        return (await response.json());
    }
    async radicals() {
        const payload = await this.getJson("/radicals");
        return payload.radicals;
    }
    async radicalDetail(id) {
        return this.getJson(`/radicals/${encodeURIComponent(id)}`);
    }
    async concepts(query) {
        const payload = await this.getJson(`/concepts?query=${encodeURIComponent(query)}`);
        return payload.concepts;
    }
    /**
     * POST /compose with supersession: when a newer compose has been issued
     * before this one resolves, the outcome is marked stale and carries no
     * response, so the UI never renders out-of-date semantics.
     */
    async compose(spec) {
        const ticket = ++this.composeSeq;
        const response = await this.fetchImpl(`${this.baseUrl}/compose`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(spec),
        });
        if (ticket !== this.composeSeq) {
            return { stale: true };
        }
        if (!response.ok) {
            throw new ServiceError(await describeError(response), response.status);
        }
        return { stale: false, response: (await response.json()) };
    }
}
async function describeError(response) {
    try {
        const payload = (await response.json());
        return payload.error?.message ?? `service error ${response.status}`;
    }
    catch {
        return `service error ${response.status}`;
    }
}
